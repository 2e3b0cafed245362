//! Brute-force oracles written against the indexing conventions alone, with
//! no calls into the library's own enumeration or LP code.

#![allow(dead_code)]

use lqhv::{Rational, Scenario};
use num_traits::{One, Zero};

pub fn digits_of(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = index % r;
        index /= r;
    }
    out
}

pub fn index_of(digits: &[usize], radices: &[usize]) -> usize {
    digits.iter().zip(radices).fold(0, |acc, (&d, &r)| acc * r + d)
}

/// Radices of a global assignment: party by party, one digit per setting.
pub fn assignment_radices(sc: &Scenario) -> Vec<usize> {
    sc.settings().iter().zip(sc.outcomes()).flat_map(|(&s, &d)| std::iter::repeat_n(d, s)).collect()
}

/// For each settings tuple, the flat table index an assignment selects.
pub fn selected_entries(sc: &Scenario, assignment: &[usize]) -> Vec<usize> {
    let mut offsets = vec![0];
    for &s in sc.settings() {
        offsets.push(offsets.last().unwrap() + s);
    }
    let tuples: usize = sc.settings().iter().product();
    let outcome_tuples: usize = sc.outcomes().iter().product();
    (0..tuples)
        .map(|t| {
            let settings = digits_of(t, sc.settings());
            let outcome: Vec<usize> = (0..sc.parties()).map(|n| assignment[offsets[n] + settings[n]]).collect();
            t * outcome_tuples + index_of(&outcome, sc.outcomes())
        })
        .collect()
}

fn assignment_count(sc: &Scenario) -> usize {
    assignment_radices(sc).iter().product()
}

/// `(min, max)` of a functional over all deterministic strategies.
pub fn brute_lhv(sc: &Scenario, coefficients: &[Rational]) -> (Rational, Rational) {
    let radices = assignment_radices(sc);
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for w in 0..assignment_count(sc) {
        let a = digits_of(w, &radices);
        let v: Rational = selected_entries(sc, &a).iter().map(|&i| coefficients[i].clone()).sum();
        if lo.as_ref().is_none_or(|l| &v < l) {
            lo = Some(v.clone());
        }
        if hi.as_ref().is_none_or(|h| &v > h) {
            hi = Some(v);
        }
    }
    (lo.unwrap(), hi.unwrap())
}

/// Marginal tables of a signed distribution over global assignments.
pub fn brute_marginals(sc: &Scenario, weights: &[Rational]) -> Vec<Rational> {
    let len: usize = sc.settings().iter().product::<usize>() * sc.outcomes().iter().product::<usize>();
    let mut out = vec![Rational::zero(); len];
    let radices = assignment_radices(sc);
    for (w, weight) in weights.iter().enumerate() {
        for i in selected_entries(sc, &digits_of(w, &radices)) {
            out[i] += weight;
        }
    }
    out
}

/// Max of `Σ_s α_s ∏_n x_{n,s_n}` over every `x ∈ {±1}^{ΣS_n}`.
pub fn brute_correlation(settings: &[usize], alpha: &[Rational]) -> Rational {
    let total: usize = settings.iter().sum();
    let mut offsets = vec![0];
    for &s in settings {
        offsets.push(offsets.last().unwrap() + s);
    }
    let mut best: Option<Rational> = None;
    for mask in 0u64..(1 << total) {
        let sign = |k: usize| if mask >> k & 1 == 1 { -1i64 } else { 1 };
        let v: Rational = alpha
            .iter()
            .enumerate()
            .map(|(t, a)| {
                let s = digits_of(t, settings);
                let p: i64 = (0..settings.len()).map(|n| sign(offsets[n] + s[n])).product();
                a * Rational::from_integer(p.into())
            })
            .sum();
        if best.as_ref().is_none_or(|b| &v > b) {
            best = Some(v);
        }
    }
    best.unwrap_or_else(Rational::one)
}
