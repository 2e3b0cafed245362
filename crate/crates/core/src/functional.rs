//! Bell functionals, their values on behaviors and their tight LHV constants.
//!
//! A functional assigns a coefficient table `f_s(λ)` to every settings tuple
//! `s`; its value on a behavior is `Σ_s Σ_λ f_s(λ) P_s(λ)`. The LHV constants
//! are the extremes of `Σ_s f_s(λ(s))` over deterministic strategies and are
//! found by exhaustive enumeration.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::behavior::{Behavior, DeterministicStrategy};
use crate::error::{Error, Result};
use crate::scalar::{Entries, Mode, Rational, Scalar, Value};
use crate::scenario::{check_budget, decode, Scenario};

/// Default cap on strategy evaluations.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct BellFunctional {
    scenario: Scenario,
    coefficients: Entries,
}

impl BellFunctional {
    pub fn new<T: Scalar>(scenario: &Scenario, tables: Vec<Vec<T>>) -> Result<Self> {
        let expected = scenario.settings_tuples();
        if tables.len() != expected {
            return Err(Error::MissingTable { expected, got: tables.len() });
        }
        let width = scenario.outcome_tuples();
        if let Some((t, table)) = tables.iter().enumerate().find(|(_, t)| t.len() != width) {
            return Err(Error::DimensionMismatch(format!(
                "coefficient table {t} has {} entries, expected {width}",
                table.len()
            )));
        }
        Self::from_entries(scenario.clone(), T::into_entries(tables.into_iter().flatten().collect()))
    }

    pub fn from_entries(scenario: Scenario, coefficients: Entries) -> Result<Self> {
        if coefficients.len() != scenario.table_len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients, scenario needs {}",
                coefficients.len(),
                scenario.table_len()
            )));
        }
        if let Entries::Float(v) = &coefficients {
            if let Some(i) = v.iter().position(|x| !x.is_finite()) {
                return Err(Error::NotFinite(i));
            }
        }
        Ok(BellFunctional { scenario, coefficients })
    }

    pub fn zero(scenario: &Scenario) -> Self {
        BellFunctional { scenario: scenario.clone(), coefficients: Entries::zeros(Mode::Exact, scenario.table_len()) }
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn coefficients(&self) -> &Entries {
        &self.coefficients
    }

    pub fn mode(&self) -> Mode {
        self.coefficients.mode()
    }

    pub fn table(&self, settings: &[usize]) -> Result<Entries> {
        let t = self.scenario.settings_index(settings)?;
        let w = self.scenario.outcome_tuples();
        Ok(self.coefficients.slice(t * w, (t + 1) * w))
    }

    pub fn scaled(&self, factor: &Value) -> BellFunctional {
        BellFunctional { scenario: self.scenario.clone(), coefficients: self.coefficients.scale(factor) }
    }

    pub fn negated(&self) -> BellFunctional {
        BellFunctional { scenario: self.scenario.clone(), coefficients: self.coefficients.neg() }
    }

    /// `Σ_s ⟨f_s⟩`: the functional's value on a behavior.
    pub fn evaluate(&self, behavior: &Behavior) -> Result<Value> {
        if behavior.scenario() != &self.scenario {
            return Err(Error::ScenarioMismatch(format!(
                "functional on {:?}, behavior on {:?}",
                self.scenario,
                behavior.scenario()
            )));
        }
        Ok(dot(&self.coefficients, behavior.entries()))
    }

    /// Value on a single deterministic strategy.
    pub fn evaluate_strategy(&self, strategy: &DeterministicStrategy) -> Result<Value> {
        DeterministicStrategy::new(&self.scenario, strategy.outcomes.clone())?;
        let w = self.scenario.outcome_tuples();
        let rows: Vec<usize> = (0..self.scenario.settings_tuples())
            .map(|t| {
                let tuple = self.scenario.settings_tuple(t);
                let outcome: Vec<usize> = tuple.iter().enumerate().map(|(n, &s)| strategy.outcomes[n][s]).collect();
                t * w + self.scenario.outcome_index(&outcome)
            })
            .collect();
        Ok(match &self.coefficients {
            Entries::Exact(v) => Value::Exact(sum_rows(v, &rows)),
            Entries::Float(v) => Value::Float(sum_rows(v, &rows)),
        })
    }

    /// `lhv_bounds` with the default enumeration budget.
    pub fn lhv_bounds(&self) -> Result<LhvBounds> {
        self.lhv_bounds_with_budget(DEFAULT_ENUMERATION_BUDGET)
    }

    /// Exact extremes over all `∏ d_n^{S_n}` deterministic strategies.
    ///
    /// Ties keep the lexicographically first strategy.
    pub fn lhv_bounds_with_budget(&self, budget: u128) -> Result<LhvBounds> {
        check_budget(self.scenario.strategy_count(), budget)?;
        Ok(match &self.coefficients {
            Entries::Exact(v) => extremes(&self.scenario, v),
            Entries::Float(v) => extremes(&self.scenario, v),
        })
    }

    /// Correlation coefficients of a two-outcome functional: `α_s = Σ_λ f_s(λ) ∏ v_n(λ_n) / 2^N`
    /// with `v(0) = 1, v(1) = -1`.
    pub fn correlation_part(&self) -> Result<CorrelationFunctional> {
        if self.scenario.outcomes().iter().any(|&d| d != 2) {
            return Err(Error::InvalidParameter("correlation part needs two outcomes per party".into()));
        }
        let w = self.scenario.outcome_tuples();
        let norm = Rational::from_integer((1i64 << self.scenario.parties()).into());
        let sign = |o: usize| -> bool {
            // parity of the number of outcome-1 entries
            self.scenario.outcome_tuple(o).iter().filter(|&&l| l == 1).count() % 2 == 1
        };
        let alpha = match &self.coefficients {
            Entries::Exact(v) => Entries::Exact(
                v.chunks(w)
                    .map(|tab| {
                        tab.iter()
                            .enumerate()
                            .fold(Rational::zero(), |acc, (o, x)| if sign(o) { acc - x } else { acc + x })
                            / norm.clone()
                    })
                    .collect(),
            ),
            Entries::Float(v) => Entries::Float(
                v.chunks(w)
                    .map(|tab| {
                        tab.iter().enumerate().fold(0.0, |acc, (o, x)| if sign(o) { acc - x } else { acc + x })
                            / Scalar::to_f64(&norm)
                    })
                    .collect(),
            ),
        };
        CorrelationFunctional::new(self.scenario.clone(), alpha)
    }
}

fn sum_rows<T: Scalar>(v: &[T], rows: &[usize]) -> T {
    rows.iter().fold(T::zero(), |acc, &r| acc + v[r].clone())
}

pub(crate) fn dot(a: &Entries, b: &Entries) -> Value {
    match (a, b) {
        (Entries::Exact(x), Entries::Exact(y)) => {
            Value::Exact(x.iter().zip(y).fold(Rational::zero(), |acc, (p, q)| acc + p * q))
        }
        _ => Value::Float(a.to_f64_vec().iter().zip(b.to_f64_vec()).map(|(p, q)| p * q).sum()),
    }
}

fn extremes<T: Scalar>(scenario: &Scenario, v: &[T]) -> LhvBounds {
    let mut best: Option<(T, usize, T, usize)> = None;
    scenario.for_each_strategy(|i, _, rows| {
        let value = sum_rows(v, rows);
        match &mut best {
            None => best = Some((value.clone(), i, value, i)),
            Some((lo, lo_i, hi, hi_i)) => {
                if value < *lo {
                    *lo = value.clone();
                    *lo_i = i;
                }
                if value > *hi {
                    *hi = value;
                    *hi_i = i;
                }
            }
        }
    });
    let (lo, lo_i, hi, hi_i) = best.expect("at least one strategy");
    LhvBounds {
        inf: lo.into_value(),
        sup: hi.into_value(),
        argmin: DeterministicStrategy::from_index(scenario, lo_i),
        argmax: DeterministicStrategy::from_index(scenario, hi_i),
    }
}

/// Tight LHV constants of a functional with witness strategies.
#[derive(Clone, Debug, PartialEq)]
pub struct LhvBounds {
    pub inf: Value,
    pub sup: Value,
    pub argmin: DeterministicStrategy,
    pub argmax: DeterministicStrategy,
}

impl LhvBounds {
    /// `max(|B_inf|, |B_sup|)`.
    pub fn lhv(&self) -> Value {
        let (a, b) = (self.inf.abs(), self.sup.abs());
        if a >= b {
            a
        } else {
            b
        }
    }
}

/// Full-correlation functional `Σ_s α_s ⟨λ_1^{(s_1)} ⋯ λ_N^{(s_N)}⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationFunctional {
    scenario: Scenario,
    alpha: Entries,
}

impl CorrelationFunctional {
    /// `alpha` holds one coefficient per settings tuple, in the usual lexicographic order.
    pub fn new(scenario: Scenario, alpha: Entries) -> Result<Self> {
        if alpha.len() != scenario.settings_tuples() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients, scenario has {} settings tuples",
                alpha.len(),
                scenario.settings_tuples()
            )));
        }
        if let Some(i) = alpha.to_f64_vec().iter().position(|x| !x.is_finite()) {
            return Err(Error::NotFinite(i));
        }
        Ok(CorrelationFunctional { scenario, alpha })
    }

    /// The CHSH expression `E11 + E12 + E21 - E22`.
    pub fn chsh() -> Self {
        let alpha = [1, 1, 1, -1].iter().map(|&x| Rational::from_integer(x.into())).collect();
        CorrelationFunctional { scenario: Scenario::chsh(), alpha: Entries::Exact(alpha) }
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn alpha(&self) -> &Entries {
        &self.alpha
    }

    /// `correlation_bound` with the default budget.
    pub fn bound(&self) -> Result<Value> {
        self.bound_with_budget(DEFAULT_ENUMERATION_BUDGET)
    }

    /// `max |F_α(η)|` over sign vectors `η_n ∈ {-1, 1}^{S_n}`.
    ///
    /// Parties 2..N are enumerated; for each choice the optimum over party 1
    /// is `Σ_{s_1} |c_{s_1}|`, where `c` is the partially contracted form.
    pub fn bound_with_budget(&self, budget: u128) -> Result<Value> {
        let rest: u32 = self.scenario.settings()[1..].iter().map(|&s| s as u32).sum();
        let needed = if rest >= 128 { None } else { Some(1u128 << rest) };
        check_budget(needed, budget)?;
        Ok(match &self.alpha {
            Entries::Exact(v) => Value::Exact(correlation_max(&self.scenario, v)),
            Entries::Float(v) => Value::Float(correlation_max(&self.scenario, v)),
        })
    }

    /// Full-probability functional `f_s(λ) = α_s ∏_n v_n(λ_n)`.
    ///
    /// Without explicit maps every party must have two outcomes and uses `0 ↦ 1, 1 ↦ -1`.
    pub fn lift(&self, value_maps: Option<&[Entries]>) -> Result<BellFunctional> {
        let sc = &self.scenario;
        let maps: Vec<Entries> = match value_maps {
            Some(m) => {
                if m.len() != sc.parties() {
                    return Err(Error::DimensionMismatch(format!(
                        "{} value maps for {} parties",
                        m.len(),
                        sc.parties()
                    )));
                }
                for (n, map) in m.iter().enumerate() {
                    if map.len() != sc.outcomes()[n] {
                        return Err(Error::DimensionMismatch(format!(
                            "value map of party {n} has {} entries, expected {}",
                            map.len(),
                            sc.outcomes()[n]
                        )));
                    }
                    for (o, x) in map.to_f64_vec().into_iter().enumerate() {
                        if !(-1.0..=1.0).contains(&x) {
                            return Err(Error::ValueOutOfRange { party: n, outcome: o, value: x });
                        }
                    }
                }
                m.to_vec()
            }
            None => {
                if sc.outcomes().iter().any(|&d| d != 2) {
                    return Err(Error::InvalidParameter(
                        "default ±1 value map needs two outcomes per party".into(),
                    ));
                }
                let pm = Entries::Exact(vec![Rational::one(), -Rational::one()]);
                vec![pm; sc.parties()]
            }
        };
        let exact = self.alpha.mode() == Mode::Exact && maps.iter().all(|m| m.mode() == Mode::Exact);
        let coefficients = if exact {
            let maps: Vec<&[Rational]> = maps.iter().map(|m| m.as_exact().unwrap()).collect();
            Entries::Exact(lift_tables(sc, self.alpha.as_exact().unwrap(), &maps))
        } else {
            let owned: Vec<Vec<f64>> = maps.iter().map(Entries::to_f64_vec).collect();
            let maps: Vec<&[f64]> = owned.iter().map(Vec::as_slice).collect();
            Entries::Float(lift_tables(sc, &self.alpha.to_f64_vec(), &maps))
        };
        BellFunctional::from_entries(sc.clone(), coefficients)
    }
}

fn lift_tables<T: Scalar>(sc: &Scenario, alpha: &[T], maps: &[&[T]]) -> Vec<T> {
    let w = sc.outcome_tuples();
    let products: Vec<T> = (0..w)
        .map(|o| {
            sc.outcome_tuple(o).iter().enumerate().fold(T::one(), |acc, (n, &l)| acc * maps[n][l].clone())
        })
        .collect();
    alpha.iter().flat_map(|a| products.iter().map(move |p| a.clone() * p.clone())).collect()
}

fn correlation_max<T: Scalar>(sc: &Scenario, alpha: &[T]) -> T {
    let settings = sc.settings();
    let s1 = settings[0];
    let rest_settings = &settings[1..];
    let rest_tuples: usize = rest_settings.iter().product();
    let rest_bits: usize = rest_settings.iter().sum();
    let offsets: Vec<usize> = rest_settings
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let mut best = T::zero();
    for mask in 0u128..(1u128 << rest_bits) {
        // sign of each rest-party settings tuple
        let signs: Vec<bool> = (0..rest_tuples)
            .map(|r| {
                decode(r, rest_settings)
                    .iter()
                    .enumerate()
                    .filter(|&(n, &s)| (mask >> (offsets[n] + s)) & 1 == 1)
                    .count()
                    % 2
                    == 1
            })
            .collect();
        let mut total = T::zero();
        for a in 0..s1 {
            let c = signs.iter().enumerate().fold(T::zero(), |acc, (r, &neg)| {
                let x = alpha[a * rest_tuples + r].clone();
                if neg {
                    acc - x
                } else {
                    acc + x
                }
            });
            total = total + num_traits::Signed::abs(&c);
        }
        if total > best {
            best = total;
        }
    }
    best
}

/// Named functionals shipped with the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// Clauser–Horne, on joint probabilities of outcome 0.
    Ch,
    /// CHSH lifted to probability tables with the ±1 value map.
    Chsh,
    /// Zohren–Gill chained ordering events with `d` outcomes per party.
    Zg(usize),
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Ch => f.write_str("CH"),
            Builtin::Chsh => f.write_str("CHSH"),
            Builtin::Zg(d) => write!(f, "ZG({d})"),
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;
    /// Accepts `CH`, `CHSH`, `ZG(d)` and `ZG:d` (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        match upper.as_str() {
            "CH" => return Ok(Builtin::Ch),
            "CHSH" => return Ok(Builtin::Chsh),
            _ => {}
        }
        let d = upper
            .strip_prefix("ZG(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| upper.strip_prefix("ZG:"))
            .and_then(|d| d.trim().parse::<usize>().ok());
        match d {
            Some(d) if d >= 2 => Ok(Builtin::Zg(d)),
            Some(d) => Err(Error::InvalidParameter(format!("ZG needs d >= 2, got {d}"))),
            None => Err(Error::UnknownBuiltin(s.to_string())),
        }
    }
}

/// Built-in functional by name; `d` is the outcome count for ZG.
pub fn builtin(name: &str, d: Option<usize>) -> Result<BellFunctional> {
    let b = match (name.trim().to_ascii_uppercase().as_str(), d) {
        ("ZG", Some(d)) => {
            if d < 2 {
                return Err(Error::InvalidParameter(format!("ZG needs d >= 2, got {d}")));
            }
            Builtin::Zg(d)
        }
        ("ZG", None) => return Err(Error::InvalidParameter("ZG needs an outcome count d".into())),
        _ => name.parse()?,
    };
    b.functional()
}

impl Builtin {
    pub fn functional(self) -> Result<BellFunctional> {
        match self {
            Builtin::Ch => Ok(ch()),
            Builtin::Chsh => CorrelationFunctional::chsh().lift(None),
            Builtin::Zg(d) => zg(d),
        }
    }
}

fn int(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

/// `P(00|11) + P(00|12) + P(00|21) - P(00|22) - P_A(0|1) - P_B(0|1)`, marginals read from table (1,1).
fn ch() -> BellFunctional {
    let sc = Scenario::chsh();
    // outcome order (a,b): 00, 01, 10, 11
    let tables = vec![
        vec![int(-1), int(-1), int(-1), int(0)],
        vec![int(1), int(0), int(0), int(0)],
        vec![int(1), int(0), int(0), int(0)],
        vec![int(-1), int(0), int(0), int(0)],
    ];
    BellFunctional::new(&sc, tables).expect("CH tables are well formed")
}

/// `P(A1 < B1) + P(B1 < A2) + P(A2 < B2) + P(B2 ≤ A1)` for outcomes `0..d`.
fn zg(d: usize) -> Result<BellFunctional> {
    let sc = Scenario::bipartite(2, d)?;
    let indicator = |event: fn(usize, usize) -> bool| -> Vec<Rational> {
        (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).map(|(a, b)| int(event(a, b) as i64)).collect()
    };
    let tables = vec![
        indicator(|a, b| a < b),  // (A1, B1)
        indicator(|a, b| b <= a), // (A1, B2)
        indicator(|a, b| b < a),  // (A2, B1)
        indicator(|a, b| a < b),  // (A2, B2)
    ];
    BellFunctional::new(&sc, tables)
}

/// Serializable summary of [`LhvBounds`].
#[derive(Clone, Debug, Serialize)]
pub struct LhvBoundsSummary {
    pub b_inf: String,
    pub b_sup: String,
    pub b_lhv: String,
    pub argmin: Vec<Vec<usize>>,
    pub argmax: Vec<Vec<usize>>,
}

impl From<&LhvBounds> for LhvBoundsSummary {
    fn from(b: &LhvBounds) -> Self {
        LhvBoundsSummary {
            b_inf: b.inf.to_string(),
            b_sup: b.sup.to_string(),
            b_lhv: b.lhv().to_string(),
            argmin: b.argmin.outcomes.clone(),
            argmax: b.argmax.outcomes.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::behavior::{deterministic_behavior, pr_box, uniform_behavior};
    use crate::scalar::ratio;

    fn exact(v: i64) -> Value {
        Value::Exact(int(v))
    }

    #[test]
    fn ch_on_pr_box_is_one_half() {
        let f = builtin("CH", None).unwrap();
        assert_eq!(f.evaluate(&pr_box()).unwrap(), Value::Exact(ratio(1, 2)));
    }

    #[test]
    fn zero_functional_is_zero() {
        let f = BellFunctional::zero(&Scenario::chsh());
        assert_eq!(f.evaluate(&pr_box()).unwrap(), exact(0));
    }

    #[test]
    fn ch_on_every_deterministic_behavior_lies_in_range() {
        let f = builtin("CH", None).unwrap();
        let sc = Scenario::chsh();
        for i in 0..16 {
            let s = DeterministicStrategy::from_index(&sc, i);
            let v = f.evaluate(&deterministic_behavior(&sc, &s).unwrap()).unwrap();
            assert!(v >= exact(-1) && v <= exact(0), "{v}");
            assert_eq!(v, f.evaluate_strategy(&s).unwrap());
        }
    }

    #[test]
    fn builtin_bounds() {
        let b = builtin("CH", None).unwrap().lhv_bounds().unwrap();
        assert_eq!((b.inf.clone(), b.sup.clone()), (exact(-1), exact(0)));
        assert_eq!(b.lhv(), exact(1));
        let b = builtin("CHSH", None).unwrap().lhv_bounds().unwrap();
        assert_eq!((b.inf, b.sup), (exact(-2), exact(2)));
        let b = builtin("ZG", Some(2)).unwrap().lhv_bounds().unwrap();
        assert_eq!((b.inf, b.sup), (exact(1), exact(2)));
    }

    #[test]
    fn zg_lower_bound_holds_for_all_d() {
        for d in 2..=9 {
            let b = builtin("ZG", Some(d)).unwrap().lhv_bounds().unwrap();
            assert_eq!(b.inf, exact(1), "d = {d}");
        }
    }

    #[test]
    fn witnesses_reproduce_bounds() {
        let f = builtin("ZG", Some(4)).unwrap();
        let b = f.lhv_bounds().unwrap();
        let sc = f.scenario();
        assert_eq!(f.evaluate(&deterministic_behavior(sc, &b.argmin).unwrap()).unwrap(), b.inf);
        assert_eq!(f.evaluate(&deterministic_behavior(sc, &b.argmax).unwrap()).unwrap(), b.sup);
    }

    #[test]
    fn ties_pick_the_first_strategy() {
        let sc = Scenario::chsh();
        let b = BellFunctional::zero(&sc).lhv_bounds().unwrap();
        assert_eq!(b.argmin.index(&sc), 0);
        assert_eq!(b.argmax.index(&sc), 0);
    }

    #[test]
    fn constant_functional() {
        let sc = Scenario::new(2, vec![2, 3], vec![2, 2]).unwrap();
        let f = BellFunctional::new(&sc, vec![vec![ratio(3, 2); 4]; 6]).unwrap();
        let b = f.lhv_bounds().unwrap();
        assert_eq!(b.inf, Value::Exact(ratio(9, 1)));
        assert_eq!(b.sup, Value::Exact(ratio(9, 1)));
    }

    #[test]
    fn budget_is_enforced() {
        let f = builtin("ZG", Some(9)).unwrap();
        assert!(matches!(f.lhv_bounds_with_budget(1000), Err(Error::BudgetExceeded { .. })));
        assert!(CorrelationFunctional::chsh().bound_with_budget(2).is_err());
    }

    #[test]
    fn correlation_bounds() {
        assert_eq!(CorrelationFunctional::chsh().bound().unwrap(), exact(2));

        let single = CorrelationFunctional::new(
            Scenario::chsh(),
            Entries::Exact(vec![ratio(-7, 3), int(0), int(0), int(0)]),
        )
        .unwrap();
        assert_eq!(single.bound().unwrap(), Value::Exact(ratio(7, 3)));

        // Mermin: α_{112} = α_{121} = α_{211} = 1, α_{222} = -1 (1-based)
        let sc = Scenario::new(3, vec![2; 3], vec![2; 3]).unwrap();
        let mut alpha = vec![int(0); 8];
        alpha[1] = int(1);
        alpha[2] = int(1);
        alpha[4] = int(1);
        alpha[7] = int(-1);
        let mermin = CorrelationFunctional::new(sc, Entries::Exact(alpha)).unwrap();
        assert_eq!(mermin.bound().unwrap(), exact(2));
        let lifted = mermin.lift(None).unwrap().lhv_bounds().unwrap();
        assert_eq!((lifted.inf, lifted.sup), (exact(-2), exact(2)));
    }

    #[test]
    fn lifted_chsh() {
        let f = CorrelationFunctional::chsh().lift(None).unwrap();
        assert_eq!(f.evaluate(&pr_box()).unwrap(), exact(4));
        assert_eq!(f.evaluate(&uniform_behavior(&Scenario::chsh())).unwrap(), exact(0));
        let zero = CorrelationFunctional::new(Scenario::chsh(), Entries::Exact(vec![int(0); 4])).unwrap();
        assert_eq!(zero.lift(None).unwrap(), BellFunctional::zero(&Scenario::chsh()));
        let back = f.correlation_part().unwrap();
        assert_eq!(back, CorrelationFunctional::chsh());
    }

    #[test]
    fn lift_validates_value_maps() {
        let bad = vec![Entries::Float(vec![1.0, -1.5]), Entries::Float(vec![1.0, -1.0])];
        assert!(matches!(CorrelationFunctional::chsh().lift(Some(&bad)), Err(Error::ValueOutOfRange { .. })));
        let sc = Scenario::new(2, vec![2, 2], vec![3, 3]).unwrap();
        let cf = CorrelationFunctional::new(sc, Entries::Exact(vec![int(1); 4])).unwrap();
        assert!(cf.lift(None).is_err());
        let maps = vec![Entries::Exact(vec![int(1), int(0), int(-1)]); 2];
        let f = cf.lift(Some(&maps)).unwrap();
        assert_eq!(f.table(&[0, 0]).unwrap().get(0), exact(1));
        assert_eq!(f.table(&[0, 0]).unwrap().get(2), exact(-1));
        assert_eq!(f.table(&[0, 0]).unwrap().get(4), exact(0));
    }

    #[test]
    fn builtin_names() {
        assert_eq!("chsh".parse::<Builtin>().unwrap(), Builtin::Chsh);
        assert_eq!("ZG(5)".parse::<Builtin>().unwrap(), Builtin::Zg(5));
        assert_eq!("zg:3".parse::<Builtin>().unwrap(), Builtin::Zg(3));
        assert!(matches!("Mermin".parse::<Builtin>(), Err(Error::UnknownBuiltin(_))));
        assert!("ZG(1)".parse::<Builtin>().is_err());
        assert!(builtin("ZG", None).is_err());
        assert!(builtin("nope", None).is_err());
    }

    #[test]
    fn scenario_mismatch_is_an_error() {
        let f = builtin("ZG", Some(3)).unwrap();
        assert!(matches!(f.evaluate(&pr_box()), Err(Error::ScenarioMismatch(_))));
    }
}
