//! Correlation scenarios and the indexing conventions every table follows.
//!
//! Settings, outcomes and parties are 0-based. Settings tuples and outcome
//! tuples are enumerated lexicographically with party 1 varying slowest, and a
//! behavior's flat storage index is `settings_index * outcome_tuples + outcome_index`.
//! Deterministic strategies (equivalently, points of the global assignment
//! space) are flattened party by party, settings in order, and enumerated
//! lexicographically with the first coordinate slowest.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ScenarioHeader", into = "ScenarioHeader")]
pub struct Scenario {
    settings: Vec<usize>,
    outcomes: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ScenarioHeader {
    parties: usize,
    settings: Vec<usize>,
    outcomes: Vec<usize>,
}

impl TryFrom<ScenarioHeader> for Scenario {
    type Error = Error;
    fn try_from(s: ScenarioHeader) -> Result<Self> {
        Scenario::new(s.parties, s.settings, s.outcomes)
    }
}

impl From<Scenario> for ScenarioHeader {
    fn from(s: Scenario) -> Self {
        ScenarioHeader { parties: s.parties(), settings: s.settings, outcomes: s.outcomes }
    }
}

impl Scenario {
    /// Validates the party count, per-party setting counts and outcome counts.
    pub fn new(parties: usize, settings: Vec<usize>, outcomes: Vec<usize>) -> Result<Self> {
        if parties == 0 {
            return Err(Error::NonPositive { what: "number of parties".into(), value: 0 });
        }
        if settings.len() != parties || outcomes.len() != parties {
            return Err(Error::DimensionMismatch(format!(
                "{parties} parties but {} setting counts and {} outcome counts",
                settings.len(),
                outcomes.len()
            )));
        }
        for (n, &s) in settings.iter().enumerate() {
            if s == 0 {
                return Err(Error::NonPositive { what: format!("setting count of party {n}"), value: s });
            }
        }
        for (n, &d) in outcomes.iter().enumerate() {
            if d < 2 {
                return Err(Error::TooFewOutcomes { party: n, outcomes: d });
            }
        }
        Ok(Scenario { settings, outcomes })
    }

    /// Two parties, two settings, two outcomes each.
    pub fn chsh() -> Self {
        Scenario { settings: vec![2, 2], outcomes: vec![2, 2] }
    }

    /// Bipartite, two settings per party, `d` outcomes per party.
    pub fn bipartite(settings: usize, outcomes: usize) -> Result<Self> {
        Scenario::new(2, vec![settings; 2], vec![outcomes; 2])
    }

    pub fn parties(&self) -> usize {
        self.settings.len()
    }

    pub fn settings(&self) -> &[usize] {
        &self.settings
    }

    pub fn outcomes(&self) -> &[usize] {
        &self.outcomes
    }

    /// Number of joint measurements, `∏ S_n`.
    pub fn settings_tuples(&self) -> usize {
        self.settings.iter().product()
    }

    /// Joint outcomes per measurement, `∏ d_n`.
    pub fn outcome_tuples(&self) -> usize {
        self.outcomes.iter().product()
    }

    /// Length of the flat table storage.
    pub fn table_len(&self) -> usize {
        self.settings_tuples() * self.outcome_tuples()
    }

    /// Length of a deterministic strategy, `∑ S_n`.
    pub fn strategy_len(&self) -> usize {
        self.settings.iter().sum()
    }

    /// `∏ d_n^{S_n}`, or `None` on overflow of `u128`.
    pub fn strategy_count(&self) -> Option<u128> {
        let mut total: u128 = 1;
        for (&s, &d) in self.settings.iter().zip(&self.outcomes) {
            for _ in 0..s {
                total = total.checked_mul(d as u128)?;
            }
        }
        Some(total)
    }

    pub fn settings_index(&self, tuple: &[usize]) -> Result<usize> {
        if tuple.len() != self.parties() {
            return Err(Error::InvalidSettings(format!(
                "tuple {tuple:?} has {} entries, scenario has {} parties",
                tuple.len(),
                self.parties()
            )));
        }
        for (n, (&s, &max)) in tuple.iter().zip(&self.settings).enumerate() {
            if s >= max {
                return Err(Error::InvalidSettings(format!(
                    "setting {s} for party {n} out of range 0..{max}"
                )));
            }
        }
        Ok(encode(tuple, &self.settings))
    }

    pub fn settings_tuple(&self, index: usize) -> Vec<usize> {
        decode(index, &self.settings)
    }

    pub fn outcome_index(&self, tuple: &[usize]) -> usize {
        encode(tuple, &self.outcomes)
    }

    pub fn outcome_tuple(&self, index: usize) -> Vec<usize> {
        decode(index, &self.outcomes)
    }

    /// Radices of the flattened strategy vector: party `n` contributes `S_n` digits in base `d_n`.
    pub fn strategy_radices(&self) -> Vec<usize> {
        self.settings
            .iter()
            .zip(&self.outcomes)
            .flat_map(|(&s, &d)| std::iter::repeat_n(d, s))
            .collect()
    }

    /// Offset of party `n`'s block inside the flattened strategy vector.
    pub fn strategy_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.parties());
        let mut acc = 0;
        for &s in &self.settings {
            offsets.push(acc);
            acc += s;
        }
        offsets
    }

    /// Visits every deterministic strategy in lexicographic order.
    ///
    /// The callback receives the strategy index, the flattened strategy and,
    /// for each settings tuple, the flat table index selected by the strategy.
    pub fn for_each_strategy<F>(&self, mut visit: F)
    where
        F: FnMut(usize, &[usize], &[usize]),
    {
        let radices = self.strategy_radices();
        let offsets = self.strategy_offsets();
        let tuples: Vec<Vec<usize>> = (0..self.settings_tuples()).map(|i| self.settings_tuple(i)).collect();
        let block = self.outcome_tuples();
        let mut digits = vec![0usize; radices.len()];
        let mut rows = vec![0usize; tuples.len()];
        let mut outcome = vec![0usize; self.parties()];
        let mut index = 0usize;
        loop {
            for (t, tuple) in tuples.iter().enumerate() {
                for (n, &s) in tuple.iter().enumerate() {
                    outcome[n] = digits[offsets[n] + s];
                }
                rows[t] = t * block + encode(&outcome, &self.outcomes);
            }
            visit(index, &digits, &rows);
            index += 1;
            // odometer, last digit fastest
            let mut pos = digits.len();
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < radices[pos] {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }
}

/// Mixed-radix encoding with the first digit most significant.
pub(crate) fn encode(digits: &[usize], radices: &[usize]) -> usize {
    digits.iter().zip(radices).fold(0, |acc, (&d, &r)| acc * r + d)
}

pub(crate) fn decode(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = index % r;
        index /= r;
    }
    out
}

/// Checks a budget against a possibly-overflowing count.
pub(crate) fn check_budget(needed: Option<u128>, budget: u128) -> Result<u128> {
    match needed {
        Some(n) if n <= budget => Ok(n),
        Some(n) => Err(Error::BudgetExceeded { needed: n.to_string(), budget }),
        None => Err(Error::BudgetExceeded { needed: "more than 2^128".into(), budget }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_scenario_examples() {
        let s = Scenario::new(2, vec![2, 2], vec![2, 2]).unwrap();
        assert_eq!(s, Scenario::chsh());
        assert_eq!(s.settings_tuples(), 4);
        assert_eq!(s.outcome_tuples(), 4);

        let single = Scenario::new(1, vec![1], vec![2]).unwrap();
        assert_eq!(single.table_len(), 2);

        let zg4 = Scenario::new(2, vec![2, 2], vec![4, 4]).unwrap();
        assert_eq!(zg4.outcome_tuples(), 16);
        assert_eq!(zg4.strategy_count(), Some(256));
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(matches!(Scenario::new(2, vec![2], vec![2, 2]), Err(Error::DimensionMismatch(_))));
        assert!(matches!(Scenario::new(2, vec![2, 0], vec![2, 2]), Err(Error::NonPositive { .. })));
        assert!(matches!(Scenario::new(2, vec![2, 2], vec![2, 1]), Err(Error::TooFewOutcomes { party: 1, .. })));
        assert!(matches!(Scenario::new(0, vec![], vec![]), Err(Error::NonPositive { .. })));
    }

    #[test]
    fn party_one_varies_slowest() {
        let s = Scenario::new(2, vec![2, 3], vec![2, 2]).unwrap();
        assert_eq!(s.settings_tuple(0), vec![0, 0]);
        assert_eq!(s.settings_tuple(1), vec![0, 1]);
        assert_eq!(s.settings_tuple(3), vec![1, 0]);
        assert_eq!(s.settings_index(&[1, 2]).unwrap(), 5);
        assert!(s.settings_index(&[2, 0]).is_err());
    }

    #[test]
    fn strategy_enumeration_is_lexicographic_and_complete() {
        let s = Scenario::new(2, vec![1, 2], vec![2, 3]).unwrap();
        let mut seen = Vec::new();
        s.for_each_strategy(|i, digits, rows| {
            assert_eq!(i, seen.len());
            assert_eq!(rows.len(), 2);
            seen.push(digits.to_vec());
        });
        assert_eq!(seen.len(), 2 * 3 * 3);
        assert_eq!(seen[0], vec![0, 0, 0]);
        assert_eq!(seen[1], vec![0, 0, 1]);
        assert_eq!(seen.last().unwrap(), &vec![1, 2, 2]);
    }

    #[test]
    fn serde_round_trip_validates() {
        let s = Scenario::chsh();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"parties":2,"settings":[2,2],"outcomes":[2,2]}"#);
        assert_eq!(serde_json::from_str::<Scenario>(&json).unwrap(), s);
        assert!(serde_json::from_str::<Scenario>(r#"{"parties":2,"settings":[2],"outcomes":[2,2]}"#).is_err());
    }
}
