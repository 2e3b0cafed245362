//! Signed (quasi-probability) models of nonsignaling behaviors and the
//! nonlocality parameter γ.
//!
//! γ is the smallest total-variation norm `Σ_ω |τ(ω)|` of a normalized signed
//! distribution `τ` on the global assignment space `Ω = ∏_n Λ_n^{S_n}` whose
//! marginals reproduce every table of the behavior. It is computed as a linear
//! program in the split `τ = u − v`. The optimal dual of that program is a Bell
//! functional with LHV norm at most one whose value on the behavior equals γ,
//! which is how the certificate is produced.
//!
//! γ is computed over Ω-supported models; that this attains the infimum over
//! all signed hidden-variable models is taken from the equivalence between
//! nonsignaling, signed local models and signed distributions on Ω.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::behavior::{Behavior, DeterministicStrategy, NONSIGNALING_TOLERANCE};
use crate::error::{Error, Result};
use crate::functional::{BellFunctional, LhvBounds, DEFAULT_ENUMERATION_BUDGET};
use crate::lp::{LinearProgram, LpSolution, SolveOptions, Status};
use crate::scalar::{Entries, Mode, Rational, Scalar, Value};
use crate::scenario::{check_budget, Scenario};

/// Default cap on `|Ω|` when building the total-variation LP.
pub const DEFAULT_OMEGA_BUDGET: u128 = 1_000_000;

/// A point of Ω. Identical in content to a deterministic strategy: one outcome
/// per (party, setting), indexed lexicographically.
pub type GlobalAssignment = DeterministicStrategy;

/// How γ is computed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SolveMode {
    /// Rational simplex; requires an exact behavior.
    Exact,
    /// `f64` simplex with the given zero tolerance.
    Float { tolerance: f64 },
}

impl SolveMode {
    pub fn float() -> Self {
        SolveMode::Float { tolerance: 1e-9 }
    }
}

/// Normalized real-valued weights on Ω.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedDistribution {
    scenario: Scenario,
    weights: Entries,
}

impl SignedDistribution {
    pub fn new(scenario: &Scenario, weights: Entries) -> Result<Self> {
        let size = scenario.strategy_count();
        if size != Some(weights.len() as u128) {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for |Ω| = {:?}",
                weights.len(),
                size
            )));
        }
        Ok(SignedDistribution { scenario: scenario.clone(), weights })
    }

    /// Point mass at one global assignment.
    pub fn point_mass(scenario: &Scenario, at: &GlobalAssignment) -> Result<Self> {
        DeterministicStrategy::new(scenario, at.outcomes.clone())?;
        let n = scenario
            .strategy_count()
            .ok_or_else(|| Error::BudgetExceeded { needed: "more than 2^128".into(), budget: u128::MAX })?
            as usize;
        let mut w = vec![Rational::zero(); n];
        w[at.index(scenario)] = Rational::one();
        Ok(SignedDistribution { scenario: scenario.clone(), weights: Entries::Exact(w) })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn weights(&self) -> &Entries {
        &self.weights
    }

    /// `Σ_ω τ(ω)`; equals one for every model produced here.
    pub fn total(&self) -> Value {
        match &self.weights {
            Entries::Exact(v) => Value::Exact(v.iter().sum()),
            Entries::Float(v) => Value::Float(v.iter().sum()),
        }
    }

    /// `‖τ‖_var = Σ_ω |τ(ω)|`.
    pub fn total_variation(&self) -> Value {
        match &self.weights {
            Entries::Exact(v) => Value::Exact(v.iter().map(Signed::abs).sum()),
            Entries::Float(v) => Value::Float(v.iter().map(|x| x.abs()).sum()),
        }
    }

    /// Jordan decomposition `τ = τ⁺ − τ⁻`.
    pub fn jordan(&self) -> (Entries, Entries) {
        match &self.weights {
            Entries::Exact(v) => {
                let pos = v.iter().map(|x| if x.is_positive() { x.clone() } else { Rational::zero() }).collect();
                let neg = v.iter().map(|x| if x.is_negative() { -x } else { Rational::zero() }).collect();
                (Entries::Exact(pos), Entries::Exact(neg))
            }
            Entries::Float(v) => (
                Entries::Float(v.iter().map(|x| x.max(0.0)).collect()),
                Entries::Float(v.iter().map(|x| (-x).max(0.0)).collect()),
            ),
        }
    }

    /// True when no weight is below `-tolerance` (exactly zero for exact weights).
    pub fn is_probability(&self, tolerance: f64) -> bool {
        match &self.weights {
            Entries::Exact(v) => v.iter().all(|x| !x.is_negative()),
            Entries::Float(v) => v.iter().all(|&x| x >= -tolerance),
        }
    }

    /// Sums τ over every ω consistent with each (settings tuple, outcome tuple).
    pub fn marginals(&self) -> SignedTables {
        let entries = match &self.weights {
            Entries::Exact(v) => Entries::Exact(marginals_generic(&self.scenario, v)),
            Entries::Float(v) => Entries::Float(marginals_generic(&self.scenario, v)),
        };
        SignedTables { scenario: self.scenario.clone(), entries }
    }
}

fn marginals_generic<T: Scalar>(scenario: &Scenario, tau: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); scenario.table_len()];
    scenario.for_each_strategy(|omega, _, rows| {
        let w = &tau[omega];
        if w.is_zero() {
            return;
        }
        for &r in rows {
            out[r] = out[r].clone() + w.clone();
        }
    });
    out
}

/// Behavior-shaped tables that may contain negative entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedTables {
    pub scenario: Scenario,
    pub entries: Entries,
}

impl SignedTables {
    /// Largest entrywise deviation from a behavior on the same scenario.
    pub fn max_deviation(&self, behavior: &Behavior) -> Result<f64> {
        if behavior.scenario() != &self.scenario {
            return Err(Error::ScenarioMismatch("marginal tables and behavior differ".into()));
        }
        Ok(self.entries.max_abs_diff(behavior.entries()))
    }

    pub fn into_behavior(self, tolerance: f64) -> Result<Behavior> {
        Behavior::from_entries(self.scenario, self.entries, tolerance)
    }
}

/// Marginal tables of a signed distribution over global assignments.
pub fn marginals_of(scenario: &Scenario, tau: &SignedDistribution) -> Result<SignedTables> {
    if tau.scenario() != scenario {
        return Err(Error::ScenarioMismatch("signed distribution lives on another scenario".into()));
    }
    Ok(tau.marginals())
}

/// The total-variation LP: variables `(u, v)` over Ω, objective `Σ u + Σ v`,
/// one equality row per (settings tuple, outcome tuple) in behavior storage order.
pub fn tv_lp<T: Scalar>(behavior: &Behavior) -> Result<LinearProgram<T>> {
    tv_lp_with_budget(behavior, DEFAULT_OMEGA_BUDGET)
}

pub fn tv_lp_with_budget<T: Scalar>(behavior: &Behavior, budget: u128) -> Result<LinearProgram<T>> {
    let sc = behavior.scenario();
    let omega = check_budget(sc.strategy_count(), budget)? as usize;
    let rhs: Vec<T> = match behavior.entries() {
        Entries::Exact(v) => v.iter().map(T::from_rational).collect(),
        Entries::Float(v) if !T::EXACT => v.iter().map(|&x| T::from_float(x)).collect(),
        Entries::Float(_) => return Err(Error::ModeMismatch),
    };
    let mut rows = vec![vec![T::zero(); 2 * omega]; sc.table_len()];
    sc.for_each_strategy(|w, _, table_rows| {
        for &r in table_rows {
            rows[r][w] = T::one();
            rows[r][omega + w] = -T::one();
        }
    });
    Ok(LinearProgram::new(vec![T::one(); 2 * omega], rows, rhs)?)
}

/// γ with its primal witness and dual certificate.
#[derive(Clone, Debug)]
pub struct GammaResult {
    pub gamma: Value,
    pub witness: SignedDistribution,
    /// Dual Bell functional normalized so that `B_lhv = 1` and its value on the behavior is positive.
    pub certificate: BellFunctional,
    pub certificate_bounds: LhvBounds,
    pub certificate_value: Value,
    pub pivots: usize,
}

impl GammaResult {
    /// `|value| / B_lhv` of the certificate.
    pub fn certificate_ratio(&self) -> Value {
        ratio_of(&self.certificate_value, &self.certificate_bounds.lhv())
    }
}

fn ratio_of(value: &Value, lhv: &Value) -> Value {
    match (value, lhv) {
        (Value::Exact(a), Value::Exact(b)) if !b.is_zero() => Value::Exact(a.abs() / b),
        _ => Value::Float(value.to_f64().abs() / lhv.to_f64()),
    }
}

/// Computes γ of a nonsignaling behavior.
pub fn gamma(behavior: &Behavior, mode: SolveMode) -> Result<GammaResult> {
    gamma_with_budget(behavior, mode, DEFAULT_OMEGA_BUDGET)
}

pub fn gamma_with_budget(behavior: &Behavior, mode: SolveMode, budget: u128) -> Result<GammaResult> {
    match mode {
        SolveMode::Exact => {
            if behavior.mode() != Mode::Exact {
                return Err(Error::ModeMismatch);
            }
            let lp = tv_lp_with_budget::<Rational>(behavior, budget)?;
            let sol = lp.solve_with(SolveOptions { tolerance: 0.0, presolve: true })?;
            assemble(behavior, sol, 0.0)
        }
        SolveMode::Float { tolerance } => {
            let lp = tv_lp_with_budget::<f64>(behavior, budget)?;
            let sol = lp.solve_with(SolveOptions { tolerance, presolve: true })?;
            assemble(behavior, sol, tolerance.max(NONSIGNALING_TOLERANCE))
        }
    }
}

fn assemble<T: Scalar>(behavior: &Behavior, sol: LpSolution<T>, ns_tolerance: f64) -> Result<GammaResult> {
    let sc = behavior.scenario();
    match sol.status {
        Status::Optimal => {}
        Status::Infeasible => {
            return Err(Error::Signaling(Box::new(behavior.nonsignaling_report(ns_tolerance))));
        }
        Status::Unbounded => unreachable!("total variation is bounded below by zero"),
    }
    let omega = sol.x.len() / 2;
    let tau: Vec<T> = (0..omega).map(|w| sol.x[w].clone() - sol.x[omega + w].clone()).collect();
    let witness = SignedDistribution { scenario: sc.clone(), weights: T::into_entries(tau) };
    let raw = BellFunctional::from_entries(sc.clone(), T::into_entries(sol.y))?;
    let raw_bounds = raw.lhv_bounds_with_budget(DEFAULT_ENUMERATION_BUDGET)?;
    let lhv = raw_bounds.lhv();
    let raw_value = raw.evaluate(behavior)?;
    // scale to B_lhv = 1 with a positive value on the behavior
    let factor = match (&lhv, &raw_value) {
        (Value::Exact(l), Value::Exact(v)) if !l.is_zero() => {
            Value::Exact(if v.is_negative() { -l.recip() } else { l.recip() })
        }
        _ => {
            let l = lhv.to_f64();
            let s = if raw_value.to_f64() < 0.0 { -1.0 } else { 1.0 };
            Value::Float(if l > 0.0 { s / l } else { s })
        }
    };
    let certificate = raw.scaled(&factor);
    let certificate_bounds = certificate.lhv_bounds_with_budget(DEFAULT_ENUMERATION_BUDGET)?;
    let certificate_value = certificate.evaluate(behavior)?;
    Ok(GammaResult {
        gamma: sol.objective.into_value(),
        witness,
        certificate,
        certificate_bounds,
        certificate_value,
        pivots: sol.pivots,
    })
}

/// Independent check of a certificate.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub b_inf: String,
    pub b_sup: String,
    pub b_lhv: String,
    pub value: String,
    pub ratio: String,
    pub ratio_f64: f64,
    pub matches_gamma: bool,
}

/// Recomputes `B_lhv` by enumeration and the certificate's value by direct
/// evaluation, then compares `|value| / B_lhv` with `gamma`.
pub fn verify_certificate(
    behavior: &Behavior,
    certificate: &BellFunctional,
    gamma: &Value,
    tolerance: f64,
) -> Result<CertificateReport> {
    let bounds = certificate.lhv_bounds()?;
    let value = certificate.evaluate(behavior)?;
    let lhv = bounds.lhv();
    let ratio = ratio_of(&value, &lhv);
    Ok(CertificateReport {
        b_inf: bounds.inf.to_string(),
        b_sup: bounds.sup.to_string(),
        b_lhv: lhv.to_string(),
        value: value.to_string(),
        ratio_f64: ratio.to_f64(),
        matches_gamma: ratio.approx_eq(gamma, tolerance),
        ratio: ratio.to_string(),
    })
}

/// Interval a Bell functional can take on a class of nonsignaling behaviors with parameter Υ.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalogBounds<T> {
    pub lower: T,
    pub upper: T,
}

/// `[B_inf − (Υ−1)/2·(B_sup−B_inf), B_sup + (Υ−1)/2·(B_sup−B_inf)]`.
pub fn analog_bounds<T: Scalar>(b_inf: T, b_sup: T, upsilon: T) -> Result<AnalogBounds<T>> {
    if upsilon < T::one() {
        return Err(Error::InvalidParameter(format!("upsilon must be at least 1, got {upsilon}")));
    }
    if b_inf > b_sup {
        return Err(Error::InvalidParameter(format!("B_inf = {b_inf} exceeds B_sup = {b_sup}")));
    }
    let two = T::one() + T::one();
    let half_excess = (upsilon - T::one()) / two;
    let widen = half_excess * (b_sup.clone() - b_inf.clone());
    Ok(AnalogBounds { lower: b_inf - widen.clone(), upper: b_sup + widen })
}

/// Largest γ over a finite family.
#[derive(Clone, Debug)]
pub struct FamilyResult {
    pub upsilon: Value,
    pub argmax: usize,
    pub gammas: Vec<Value>,
}

/// Υ over an explicit family of nonsignaling behaviors (scenarios may differ).
pub fn upsilon_family(behaviors: &[Behavior], mode: SolveMode) -> Result<FamilyResult> {
    upsilon_family_with_budget(behaviors, mode, DEFAULT_OMEGA_BUDGET)
}

pub fn upsilon_family_with_budget(behaviors: &[Behavior], mode: SolveMode, budget: u128) -> Result<FamilyResult> {
    if behaviors.is_empty() {
        return Err(Error::InvalidParameter("empty family".into()));
    }
    let mut gammas = Vec::with_capacity(behaviors.len());
    for b in behaviors {
        gammas.push(gamma_with_budget(b, mode, budget)?.gamma);
    }
    let mut argmax = 0;
    for (i, g) in gammas.iter().enumerate() {
        if *g > gammas[argmax] {
            argmax = i;
        }
    }
    Ok(FamilyResult { upsilon: gammas[argmax].clone(), argmax, gammas })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::behavior::{deterministic_behavior, mix, pr_box, uniform_behavior};
    use crate::functional::{builtin, CorrelationFunctional};
    use crate::scalar::ratio;

    /// 3/16 on the eight assignments with CHSH value +2, -1/16 on those with -2.
    fn pr_witness() -> SignedDistribution {
        let sc = Scenario::chsh();
        let chsh = CorrelationFunctional::chsh().lift(None).unwrap();
        let w = (0..16)
            .map(|i| {
                let v = chsh.evaluate_strategy(&DeterministicStrategy::from_index(&sc, i)).unwrap();
                if v == Value::Exact(ratio(2, 1)) {
                    ratio(3, 16)
                } else {
                    ratio(-1, 16)
                }
            })
            .collect();
        SignedDistribution::new(&sc, Entries::Exact(w)).unwrap()
    }

    #[test]
    fn point_mass_marginals_are_deterministic_tables() {
        let sc = Scenario::new(2, vec![2, 3], vec![2, 3]).unwrap();
        let s = DeterministicStrategy::new(&sc, vec![vec![1, 0], vec![2, 0, 1]]).unwrap();
        let tau = SignedDistribution::point_mass(&sc, &s).unwrap();
        let m = marginals_of(&sc, &tau).unwrap();
        assert_eq!(m.entries, deterministic_behavior(&sc, &s).unwrap().entries().clone());
    }

    #[test]
    fn explicit_pr_witness() {
        let tau = pr_witness();
        assert_eq!(tau.total(), Value::Exact(Rational::one()));
        assert_eq!(tau.total_variation(), Value::Exact(ratio(2, 1)));
        assert!(!tau.is_probability(0.0));
        let m = marginals_of(&Scenario::chsh(), &tau).unwrap();
        assert_eq!(m.max_deviation(&pr_box()).unwrap(), 0.0);
        let (pos, neg) = tau.jordan();
        let p: Rational = pos.as_exact().unwrap().iter().sum();
        let n: Rational = neg.as_exact().unwrap().iter().sum();
        assert_eq!(p - n, Rational::one());
    }

    #[test]
    fn probability_distributions_give_lhv_behaviors() {
        let sc = Scenario::chsh();
        let w: Vec<Rational> = (1..=16).map(|i| ratio(i, 136)).collect();
        let tau = SignedDistribution::new(&sc, Entries::Exact(w)).unwrap();
        assert_eq!(tau.total_variation(), Value::Exact(Rational::one()));
        let b = tau.marginals().into_behavior(0.0).unwrap();
        assert!(b.is_nonsignaling(0.0));
        assert_eq!(gamma(&b, SolveMode::Exact).unwrap().gamma, Value::Exact(Rational::one()));
    }

    #[test]
    fn lp_sizes() {
        let lp = tv_lp::<Rational>(&pr_box()).unwrap();
        assert_eq!((lp.num_vars(), lp.num_rows()), (32, 16));
        let sc = Scenario::new(2, vec![2, 2], vec![3, 3]).unwrap();
        let lp = tv_lp::<f64>(&uniform_behavior(&sc)).unwrap();
        assert_eq!((lp.num_vars(), lp.num_rows()), (162, 36));
        assert!(tv_lp_with_budget::<f64>(&uniform_behavior(&sc), 80).is_err());
        assert!(matches!(tv_lp::<Rational>(&pr_box().to_float()), Err(Error::ModeMismatch)));
    }

    #[test]
    fn pr_box_gamma_is_two() {
        let r = gamma(&pr_box(), SolveMode::Exact).unwrap();
        assert_eq!(r.gamma, Value::Exact(ratio(2, 1)));
        assert_eq!(r.witness.total_variation(), r.gamma);
        assert_eq!(r.witness.marginals().max_deviation(&pr_box()).unwrap(), 0.0);
        assert_eq!(r.certificate_bounds.lhv(), Value::Exact(Rational::one()));
        assert_eq!(r.certificate_ratio(), r.gamma);
        let report = verify_certificate(&pr_box(), &r.certificate, &r.gamma, 0.0).unwrap();
        assert!(report.matches_gamma);
        assert_eq!(report.ratio, "2");

        let scaled = r.certificate.scaled(&Value::Exact(ratio(5, 1)));
        let report = verify_certificate(&pr_box(), &scaled, &r.gamma, 0.0).unwrap();
        assert_eq!(report.ratio, "2");
        assert_eq!(report.b_lhv, "5");

        let float = gamma(&pr_box(), SolveMode::float()).unwrap();
        assert!((float.gamma.to_f64() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn pr_certificate_correlation_part_is_chsh_like() {
        let r = gamma(&pr_box(), SolveMode::Exact).unwrap();
        let alpha = r.certificate.correlation_part().unwrap();
        let a = alpha.alpha().as_exact().unwrap().to_vec();
        let mag = a[0].abs();
        assert!(!mag.is_zero());
        assert!(a.iter().all(|x| x.abs() == mag), "{a:?}");
        let negatives = a.iter().filter(|x| x.is_negative()).count();
        assert_eq!(negatives % 2, 1, "{a:?}");
    }

    #[test]
    fn lhv_behaviors_never_exceed_ratio_one() {
        let b = mix(
            &[uniform_behavior(&Scenario::chsh()), deterministic_behavior(&Scenario::chsh(), &DeterministicStrategy::from_index(&Scenario::chsh(), 5)).unwrap()],
            &Entries::Exact(vec![ratio(1, 3), ratio(2, 3)]),
        )
        .unwrap();
        for f in [builtin("CH", None).unwrap(), builtin("CHSH", None).unwrap()] {
            let rep = verify_certificate(&b, &f, &Value::Exact(Rational::one()), 0.0).unwrap();
            assert!(rep.ratio_f64 <= 1.0);
        }
        assert_eq!(gamma(&b, SolveMode::Exact).unwrap().gamma, Value::Exact(Rational::one()));
    }

    #[test]
    fn signaling_behaviors_are_rejected() {
        let sc = Scenario::chsh();
        let tables = vec![
            vec![ratio(1, 2), ratio(0, 1), ratio(1, 2), ratio(0, 1)],
            vec![ratio(1, 2), ratio(0, 1), ratio(1, 2), ratio(0, 1)],
            vec![ratio(0, 1), ratio(1, 2), ratio(0, 1), ratio(1, 2)],
            vec![ratio(0, 1), ratio(1, 2), ratio(0, 1), ratio(1, 2)],
        ];
        let b = Behavior::new(&sc, tables, 0.0).unwrap();
        match gamma(&b, SolveMode::Exact) {
            Err(Error::Signaling(report)) => assert!(!report.passed),
            other => panic!("expected signaling error, got {other:?}"),
        }
        assert!(matches!(gamma(&b.to_float(), SolveMode::float()), Err(Error::Signaling(_))));
    }

    #[test]
    fn analog_intervals() {
        let s2 = std::f64::consts::SQRT_2;
        let a = analog_bounds(-1.0, 0.0, s2).unwrap();
        assert!((a.lower + (s2 + 1.0) / 2.0).abs() < 1e-12);
        assert!((a.upper - (s2 - 1.0) / 2.0).abs() < 1e-12);
        let same = analog_bounds(ratio(-3, 2), ratio(7, 4), Rational::one()).unwrap();
        assert_eq!((same.lower, same.upper), (ratio(-3, 2), ratio(7, 4)));
        let zg = analog_bounds(ratio(1, 1), ratio(2, 1), ratio(3, 1)).unwrap();
        assert_eq!((zg.lower, zg.upper), (ratio(0, 1), ratio(3, 1)));
        let point = analog_bounds(2.5, 2.5, 7.0).unwrap();
        assert_eq!((point.lower, point.upper), (2.5, 2.5));
        assert!(analog_bounds(0.0, 1.0, 0.5).is_err());
        assert!(analog_bounds(1.0, 0.0, 1.5).is_err());
    }

    #[test]
    fn family_maximum() {
        let fam = [uniform_behavior(&Scenario::chsh()), pr_box()];
        let r = upsilon_family(&fam, SolveMode::Exact).unwrap();
        assert_eq!(r.upsilon, Value::Exact(ratio(2, 1)));
        assert_eq!(r.argmax, 1);
        assert!(upsilon_family(&[], SolveMode::Exact).is_err());
    }
}
