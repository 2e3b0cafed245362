//! Behaviors (boxes): one joint outcome distribution per settings tuple.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{ratio, Entries, Mode, Rational, Scalar};
use crate::scenario::{decode, encode, Scenario};

/// Default tolerance for float-mode nonsignaling checks.
pub const NONSIGNALING_TOLERANCE: f64 = 1e-10;

/// A validated family of joint probability tables.
///
/// Immutable once built; see the module docs of [`crate::scenario`] for the storage order.
#[derive(Clone, Debug, PartialEq)]
pub struct Behavior {
    scenario: Scenario,
    entries: Entries,
}

/// One fixed outcome per (party, setting) pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DeterministicStrategy {
    /// `outcomes[n][s]` is the outcome party `n` returns for setting `s`.
    pub outcomes: Vec<Vec<usize>>,
}

impl DeterministicStrategy {
    pub fn new(scenario: &Scenario, outcomes: Vec<Vec<usize>>) -> Result<Self> {
        if outcomes.len() != scenario.parties() {
            return Err(Error::InconsistentStrategy(format!(
                "{} parties given, scenario has {}",
                outcomes.len(),
                scenario.parties()
            )));
        }
        for (n, row) in outcomes.iter().enumerate() {
            if row.len() != scenario.settings()[n] {
                return Err(Error::InconsistentStrategy(format!(
                    "party {n} has {} settings, strategy lists {}",
                    scenario.settings()[n],
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&l| l >= scenario.outcomes()[n]) {
                return Err(Error::InconsistentStrategy(format!(
                    "party {n} outcome {bad} out of range 0..{}",
                    scenario.outcomes()[n]
                )));
            }
        }
        Ok(DeterministicStrategy { outcomes })
    }

    /// Rebuilds a strategy from the flattened digit vector used during enumeration.
    pub fn from_digits(scenario: &Scenario, digits: &[usize]) -> Self {
        let offsets = scenario.strategy_offsets();
        let outcomes = scenario
            .settings()
            .iter()
            .zip(offsets)
            .map(|(&s, off)| digits[off..off + s].to_vec())
            .collect();
        DeterministicStrategy { outcomes }
    }

    pub fn from_index(scenario: &Scenario, index: usize) -> Self {
        Self::from_digits(scenario, &decode(index, &scenario.strategy_radices()))
    }

    pub fn digits(&self) -> Vec<usize> {
        self.outcomes.iter().flatten().copied().collect()
    }

    /// Position in the lexicographic enumeration (equivalently, in the global assignment space).
    pub fn index(&self, scenario: &Scenario) -> usize {
        encode(&self.digits(), &scenario.strategy_radices())
    }
}

/// Where the marginal of the other parties changed with one party's setting.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignalingWitness {
    /// The party whose setting change moved the others' marginal.
    pub party: usize,
    pub settings: Vec<usize>,
    pub other_settings: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonsignalingReport {
    pub passed: bool,
    pub worst_deviation: f64,
    pub tolerance: f64,
    pub violation: Option<SignalingWitness>,
}

impl Behavior {
    /// Validates shape, signs and normalization: one table per settings tuple, each with `∏ d_n` entries.
    pub fn new<T: Scalar>(scenario: &Scenario, tables: Vec<Vec<T>>, tolerance: f64) -> Result<Self> {
        let expected = scenario.settings_tuples();
        if tables.len() != expected {
            return Err(Error::MissingTable { expected, got: tables.len() });
        }
        let width = scenario.outcome_tuples();
        let mut flat = Vec::with_capacity(scenario.table_len());
        for (t, table) in tables.into_iter().enumerate() {
            if table.len() != width {
                return Err(Error::DimensionMismatch(format!(
                    "table {t} has {} entries, expected {width}",
                    table.len()
                )));
            }
            flat.extend(table);
        }
        Self::from_entries(scenario.clone(), T::into_entries(flat), tolerance)
    }

    /// Validates flat storage. Exact entries are checked exactly; float entries within `tolerance`.
    pub fn from_entries(scenario: Scenario, entries: Entries, tolerance: f64) -> Result<Self> {
        if entries.len() != scenario.table_len() {
            return Err(Error::DimensionMismatch(format!(
                "{} entries, scenario needs {}",
                entries.len(),
                scenario.table_len()
            )));
        }
        let width = scenario.outcome_tuples();
        match &entries {
            Entries::Exact(v) => check_tables(v, width, &Rational::zero())?,
            Entries::Float(v) => {
                if let Some(i) = v.iter().position(|x| !x.is_finite()) {
                    return Err(Error::NotFinite(i));
                }
                check_tables(v, width, &tolerance)?
            }
        }
        Ok(Behavior { scenario, entries })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    pub fn mode(&self) -> Mode {
        self.entries.mode()
    }

    /// The table for one settings tuple.
    pub fn table(&self, settings: &[usize]) -> Result<Entries> {
        let t = self.scenario.settings_index(settings)?;
        let w = self.scenario.outcome_tuples();
        Ok(self.entries.slice(t * w, (t + 1) * w))
    }

    pub fn to_float(&self) -> Behavior {
        Behavior { scenario: self.scenario.clone(), entries: self.entries.to_float() }
    }

    /// Marginal over `parties` (0-based, any order, no repeats) for one settings tuple.
    ///
    /// The result is indexed lexicographically over the subset's outcomes in increasing party order.
    pub fn marginal(&self, settings: &[usize], parties: &[usize]) -> Result<Entries> {
        let t = self.scenario.settings_index(settings)?;
        let keep = subset_mask(&self.scenario, parties)?;
        Ok(match &self.entries {
            Entries::Exact(v) => Entries::Exact(marginal_of_table(&self.scenario, v, t, &keep)),
            Entries::Float(v) => Entries::Float(marginal_of_table(&self.scenario, v, t, &keep)),
        })
    }

    /// Checks that every party's setting leaves the other parties' joint marginal unchanged.
    pub fn nonsignaling_report(&self, tolerance: f64) -> NonsignalingReport {
        match &self.entries {
            Entries::Exact(v) => nonsignaling_generic(&self.scenario, v, tolerance),
            Entries::Float(v) => nonsignaling_generic(&self.scenario, v, tolerance),
        }
    }

    pub fn is_nonsignaling(&self, tolerance: f64) -> bool {
        self.nonsignaling_report(tolerance).passed
    }

    /// Keeps only the listed settings of one party (in the given order).
    pub fn restrict_settings(&self, party: usize, keep: &[usize]) -> Result<Behavior> {
        let sc = &self.scenario;
        if party >= sc.parties() {
            return Err(Error::InvalidSubset(format!("party {party} out of range")));
        }
        if keep.is_empty() {
            return Err(Error::InvalidSettings("at least one setting must be kept".into()));
        }
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != keep.len() || keep.iter().any(|&s| s >= sc.settings()[party]) {
            return Err(Error::InvalidSettings(format!("invalid settings {keep:?} for party {party}")));
        }
        let mut settings = sc.settings().to_vec();
        settings[party] = keep.len();
        let restricted = Scenario::new(sc.parties(), settings, sc.outcomes().to_vec())?;
        let w = sc.outcome_tuples();
        let pick = |t_new: usize| {
            let mut tuple = restricted.settings_tuple(t_new);
            tuple[party] = keep[tuple[party]];
            let t_old = encode(&tuple, sc.settings());
            t_old * w..(t_old + 1) * w
        };
        let entries = match &self.entries {
            Entries::Exact(v) => Entries::Exact(
                (0..restricted.settings_tuples()).flat_map(|t| v[pick(t)].to_vec()).collect(),
            ),
            Entries::Float(v) => Entries::Float(
                (0..restricted.settings_tuples()).flat_map(|t| v[pick(t)].to_vec()).collect(),
            ),
        };
        Ok(Behavior { scenario: restricted, entries })
    }

    /// Removes a single setting from one party.
    pub fn drop_setting(&self, party: usize, setting: usize) -> Result<Behavior> {
        let count = *self
            .scenario
            .settings()
            .get(party)
            .ok_or_else(|| Error::InvalidSubset(format!("party {party} out of range")))?;
        let keep: Vec<usize> = (0..count).filter(|&s| s != setting).collect();
        if keep.len() == count {
            return Err(Error::InvalidSettings(format!("party {party} has no setting {setting}")));
        }
        self.restrict_settings(party, &keep)
    }

    /// Independent composition: parties of `self` followed by parties of `other`.
    pub fn product(&self, other: &Behavior) -> Behavior {
        let (a, b) = (&self.scenario, &other.scenario);
        let scenario = Scenario::new(
            a.parties() + b.parties(),
            [a.settings(), b.settings()].concat(),
            [a.outcomes(), b.outcomes()].concat(),
        )
        .expect("concatenation of valid scenarios");
        let entries = match (&self.entries, &other.entries) {
            (Entries::Exact(x), Entries::Exact(y)) => Entries::Exact(product_tables(a, b, x, y)),
            _ => Entries::Float(product_tables(a, b, &self.entries.to_f64_vec(), &other.entries.to_f64_vec())),
        };
        Behavior { scenario, entries }
    }
}

fn check_tables<T: Scalar>(v: &[T], width: usize, tol: &T) -> Result<()> {
    for (t, table) in v.chunks(width).enumerate() {
        for (i, x) in table.iter().enumerate() {
            if *x < -tol.clone() {
                return Err(Error::NegativeEntry { table: t, entry: i, value: x.to_f64() });
            }
        }
        let sum = table.iter().fold(T::zero(), |acc, x| acc + x.clone());
        if (sum.clone() - T::one()).abs() > *tol {
            return Err(Error::Normalization { table: t, sum: sum.to_f64() });
        }
    }
    Ok(())
}

fn subset_mask(scenario: &Scenario, parties: &[usize]) -> Result<Vec<bool>> {
    if parties.is_empty() {
        return Err(Error::InvalidSubset("subset must be nonempty".into()));
    }
    let mut mask = vec![false; scenario.parties()];
    for &p in parties {
        if p >= mask.len() {
            return Err(Error::InvalidSubset(format!("party {p} out of range 0..{}", mask.len())));
        }
        if mask[p] {
            return Err(Error::InvalidSubset(format!("party {p} listed twice")));
        }
        mask[p] = true;
    }
    Ok(mask)
}

/// Sums table `t` over every party with `keep[n] == false`.
fn marginal_of_table<T: Scalar>(scenario: &Scenario, v: &[T], t: usize, keep: &[bool]) -> Vec<T> {
    let radices: Vec<usize> = scenario
        .outcomes()
        .iter()
        .zip(keep)
        .filter(|(_, &k)| k)
        .map(|(&d, _)| d)
        .collect();
    let mut out = vec![T::zero(); radices.iter().product()];
    let w = scenario.outcome_tuples();
    let mut sub = Vec::with_capacity(radices.len());
    for (o, x) in v[t * w..(t + 1) * w].iter().enumerate() {
        let tuple = scenario.outcome_tuple(o);
        sub.clear();
        sub.extend(tuple.iter().zip(keep).filter(|(_, &k)| k).map(|(&l, _)| l));
        let slot = &mut out[encode(&sub, &radices)];
        *slot = slot.clone() + x.clone();
    }
    out
}

fn nonsignaling_generic<T: Scalar>(scenario: &Scenario, v: &[T], tolerance: f64) -> NonsignalingReport {
    let mut worst = 0.0f64;
    let mut violation = None;
    let n_parties = scenario.parties();
    if n_parties > 1 {
        for party in 0..n_parties {
            let keep: Vec<bool> = (0..n_parties).map(|m| m != party).collect();
            for t in 0..scenario.settings_tuples() {
                let tuple = scenario.settings_tuple(t);
                if tuple[party] != 0 {
                    continue;
                }
                let reference = marginal_of_table(scenario, v, t, &keep);
                for s in 1..scenario.settings()[party] {
                    let mut other = tuple.clone();
                    other[party] = s;
                    let u = encode(&other, scenario.settings());
                    let m = marginal_of_table(scenario, v, u, &keep);
                    let dev = reference
                        .iter()
                        .zip(&m)
                        .map(|(a, b)| (a.clone() - b.clone()).abs())
                        .fold(T::zero(), |acc, x| if x > acc { x } else { acc })
                        .to_f64();
                    if dev > worst {
                        worst = dev;
                        if dev > tolerance {
                            violation = Some(SignalingWitness {
                                party,
                                settings: tuple.clone(),
                                other_settings: other,
                            });
                        }
                    }
                }
            }
        }
    }
    NonsignalingReport { passed: worst <= tolerance, worst_deviation: worst, tolerance, violation }
}

fn product_tables<T: Scalar>(a: &Scenario, b: &Scenario, x: &[T], y: &[T]) -> Vec<T> {
    let (wa, wb) = (a.outcome_tuples(), b.outcome_tuples());
    let mut out = Vec::with_capacity(x.len() * y.len());
    for ta in 0..a.settings_tuples() {
        for tb in 0..b.settings_tuples() {
            for oa in 0..wa {
                for ob in 0..wb {
                    out.push(x[ta * wa + oa].clone() * y[tb * wb + ob].clone());
                }
            }
        }
    }
    out
}

/// Point-mass tables of a deterministic strategy (exact mode).
pub fn deterministic_behavior(scenario: &Scenario, strategy: &DeterministicStrategy) -> Result<Behavior> {
    DeterministicStrategy::new(scenario, strategy.outcomes.clone())?;
    let mut v = vec![Rational::zero(); scenario.table_len()];
    let w = scenario.outcome_tuples();
    for t in 0..scenario.settings_tuples() {
        let tuple = scenario.settings_tuple(t);
        let outcome: Vec<usize> = tuple.iter().enumerate().map(|(n, &s)| strategy.outcomes[n][s]).collect();
        v[t * w + scenario.outcome_index(&outcome)] = Rational::one();
    }
    Ok(Behavior { scenario: scenario.clone(), entries: Entries::Exact(v) })
}

/// Convex combination. Exact only when every behavior and every weight is exact.
pub fn mix(behaviors: &[Behavior], weights: &Entries) -> Result<Behavior> {
    let first = behaviors.first().ok_or_else(|| Error::InvalidParameter("empty mixture".into()))?;
    if weights.len() != behaviors.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} behaviors but {} weights",
            behaviors.len(),
            weights.len()
        )));
    }
    if let Some(b) = behaviors.iter().find(|b| b.scenario != first.scenario) {
        return Err(Error::ScenarioMismatch(format!("{:?} vs {:?}", first.scenario, b.scenario)));
    }
    let all_exact = weights.mode() == Mode::Exact && behaviors.iter().all(|b| b.mode() == Mode::Exact);
    if all_exact {
        let w = weights.as_exact().expect("exact weights");
        check_weights(w, &Rational::zero())?;
        let tables: Vec<&[Rational]> = behaviors.iter().map(|b| b.entries.as_exact().unwrap()).collect();
        Ok(Behavior { scenario: first.scenario.clone(), entries: Entries::Exact(combine(&tables, w)) })
    } else {
        let w = weights.to_f64_vec();
        check_weights(&w, &1e-12)?;
        let owned: Vec<Vec<f64>> = behaviors.iter().map(|b| b.entries.to_f64_vec()).collect();
        let tables: Vec<&[f64]> = owned.iter().map(Vec::as_slice).collect();
        Ok(Behavior { scenario: first.scenario.clone(), entries: Entries::Float(combine(&tables, &w)) })
    }
}

fn check_weights<T: Scalar>(w: &[T], tol: &T) -> Result<()> {
    let sum = w.iter().fold(T::zero(), |a, x| a + x.clone());
    if w.iter().any(|x| *x < -tol.clone()) || (sum.clone() - T::one()).abs() > *tol {
        return Err(Error::Weights { sum: sum.to_f64() });
    }
    Ok(())
}

fn combine<T: Scalar>(tables: &[&[T]], w: &[T]) -> Vec<T> {
    let len = tables[0].len();
    (0..len)
        .map(|i| tables.iter().zip(w).fold(T::zero(), |acc, (t, wk)| acc + t[i].clone() * wk.clone()))
        .collect()
}

/// The Popescu–Rohrlich box: `P(a,b|x,y) = 1/2` when `a ⊕ b = x·y`.
pub fn pr_box() -> Behavior {
    pr_type_box(0, 0, 0)
}

/// One of the eight local relabelings of the PR box:
/// `P(a,b|x,y) = 1/2` when `a ⊕ b = x·y ⊕ αx ⊕ βy ⊕ γ`.
pub fn pr_type_box(alpha: usize, beta: usize, gamma: usize) -> Behavior {
    let scenario = Scenario::chsh();
    let half = ratio(1, 2);
    let mut v = Vec::with_capacity(16);
    for x in 0..2 {
        for y in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    let target = (x * y) ^ ((alpha & 1) * x) ^ ((beta & 1) * y) ^ (gamma & 1);
                    v.push(if a ^ b == target { half.clone() } else { Rational::zero() });
                }
            }
        }
    }
    Behavior { scenario, entries: Entries::Exact(v) }
}

/// Every table uniform; an LHV behavior.
pub fn uniform_behavior(scenario: &Scenario) -> Behavior {
    let p = ratio(1, scenario.outcome_tuples() as i64);
    Behavior { scenario: scenario.clone(), entries: Entries::Exact(vec![p; scenario.table_len()]) }
}
