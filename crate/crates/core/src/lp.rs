//! Dense two-phase simplex for `min cᵀx  s.t.  Ax = b, x ≥ 0`.
//!
//! The solver is generic over [`Scalar`]: with [`Rational`](crate::scalar::Rational)
//! every step is exact and all comparisons are against zero; with `f64` the
//! comparisons use the tolerance from [`SolveOptions`]. Bland's rule is used
//! for both entering and leaving choices, so exact solves always terminate.
//!
//! Redundant equality rows are removed before phase one by incremental
//! row reduction. Rows that survive keep their original index, and dual values
//! of removed rows are reported as zero, which is a valid extension of the
//! reduced problem's dual.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::{parse_rational, Rational, Scalar};

#[derive(Debug, Error)]
pub enum LpError {
    #[error("LP dimension mismatch: {0}")]
    Dimension(String),
    #[error("LP data contains a non-finite value")]
    NotFinite,
    #[error("numerical instability: residual {residual:e} exceeds {limit:e}")]
    NumericalInstability { residual: f64, limit: f64 },
    #[error("malformed LP dump: {0}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram<T> {
    pub objective: Vec<T>,
    pub rows: Vec<Vec<T>>,
    pub rhs: Vec<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub status: Status,
    /// Primal point; meaningful when optimal.
    pub x: Vec<T>,
    pub objective: T,
    /// One dual value per original constraint row.
    pub y: Vec<T>,
    /// Basic variable of each retained row.
    pub basis: Vec<usize>,
    /// Original indices of the rows kept after row reduction.
    pub retained_rows: Vec<usize>,
    pub pivots: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Zero threshold in float mode; ignored in exact mode.
    pub tolerance: f64,
    /// Remove linearly dependent rows before phase one.
    pub presolve: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { tolerance: 1e-9, presolve: true }
    }
}

impl<T: Scalar> LinearProgram<T> {
    pub fn new(objective: Vec<T>, rows: Vec<Vec<T>>, rhs: Vec<T>) -> Result<Self, LpError> {
        let lp = LinearProgram { objective, rows, rhs };
        lp.check()?;
        Ok(lp)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    fn check(&self) -> Result<(), LpError> {
        if self.rows.len() != self.rhs.len() {
            return Err(LpError::Dimension(format!("{} rows but {} right-hand sides", self.rows.len(), self.rhs.len())));
        }
        if let Some((i, r)) = self.rows.iter().enumerate().find(|(_, r)| r.len() != self.objective.len()) {
            return Err(LpError::Dimension(format!(
                "row {i} has {} entries, expected {}",
                r.len(),
                self.objective.len()
            )));
        }
        let finite = |x: &T| x.to_f64().is_finite() || T::EXACT;
        if !(self.objective.iter().all(finite) && self.rhs.iter().all(finite) && self.rows.iter().flatten().all(finite)) {
            return Err(LpError::NotFinite);
        }
        Ok(())
    }

    /// Solves with default options (presolve on, float tolerance 1e-9).
    pub fn solve(&self) -> Result<LpSolution<T>, LpError> {
        self.solve_with(SolveOptions::default())
    }

    pub fn solve_with(&self, opts: SolveOptions) -> Result<LpSolution<T>, LpError> {
        self.check()?;
        let eps = if T::EXACT { T::zero() } else { T::from_float(opts.tolerance) };
        let solution = Simplex::run(self, &eps, opts.presolve);
        if !T::EXACT && solution.status == Status::Optimal {
            let report = self.verify(&solution, opts.tolerance);
            let limit = 10.0 * opts.tolerance;
            if report.worst_residual > limit {
                return Err(LpError::NumericalInstability { residual: report.worst_residual, limit });
            }
        }
        Ok(solution)
    }

    /// Checks primal feasibility, dual feasibility, complementary slackness and strong duality.
    ///
    /// Exact data is checked exactly; `tolerance` only applies to floats.
    pub fn verify(&self, sol: &LpSolution<T>, tolerance: f64) -> VerificationReport {
        let eps = if T::EXACT { T::zero() } else { T::from_float(tolerance) };
        let mut worst = 0.0f64;
        let mut track = |x: &T| {
            let v = x.to_f64().abs();
            if v > worst {
                worst = v;
            }
        };
        let dims_ok = sol.x.len() == self.num_vars() && sol.y.len() == self.num_rows();
        if !dims_ok || sol.status != Status::Optimal {
            return VerificationReport {
                feasible: false,
                nonnegative: false,
                dual_feasible: false,
                complementary_slackness: false,
                strong_duality: false,
                worst_residual: f64::INFINITY,
            };
        }
        let mut feasible = true;
        for (row, b) in self.rows.iter().zip(&self.rhs) {
            let r = row.iter().zip(&sol.x).fold(T::zero(), |acc, (a, x)| acc + a.clone() * x.clone()) - b.clone();
            track(&r);
            if r.abs() > eps {
                feasible = false;
            }
        }
        let nonnegative = sol.x.iter().all(|x| {
            track(&(if *x < T::zero() { x.clone() } else { T::zero() }));
            *x >= -eps.clone()
        });
        let mut dual_feasible = true;
        let mut complementary = true;
        for j in 0..self.num_vars() {
            let reduced = self.objective[j].clone()
                - self.rows.iter().zip(&sol.y).fold(T::zero(), |acc, (row, y)| acc + row[j].clone() * y.clone());
            if reduced < -eps.clone() {
                dual_feasible = false;
                track(&reduced);
            }
            let slack = reduced * sol.x[j].clone();
            track(&slack);
            if slack.abs() > eps {
                complementary = false;
            }
        }
        let primal = self.objective.iter().zip(&sol.x).fold(T::zero(), |acc, (c, x)| acc + c.clone() * x.clone());
        let dual = self.rhs.iter().zip(&sol.y).fold(T::zero(), |acc, (b, y)| acc + b.clone() * y.clone());
        let gap = primal.clone() - dual;
        track(&gap);
        let objective_gap = primal - sol.objective.clone();
        track(&objective_gap);
        let strong_duality = gap.abs() <= eps && objective_gap.abs() <= eps;
        VerificationReport {
            feasible,
            nonnegative,
            dual_feasible,
            complementary_slackness: complementary,
            strong_duality,
            worst_residual: worst,
        }
    }
}

/// Outcome of [`LinearProgram::verify`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub feasible: bool,
    pub nonnegative: bool,
    pub dual_feasible: bool,
    pub complementary_slackness: bool,
    pub strong_duality: bool,
    pub worst_residual: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.feasible && self.nonnegative && self.dual_feasible && self.complementary_slackness && self.strong_duality
    }
}

struct Simplex<'a, T> {
    /// rows × (vars + artificials + 1); last column is the right-hand side.
    tableau: Vec<Vec<T>>,
    basis: Vec<usize>,
    vars: usize,
    eps: &'a T,
    pivots: usize,
}

impl<'a, T: Scalar> Simplex<'a, T> {
    fn run(lp: &LinearProgram<T>, eps: &'a T, presolve: bool) -> LpSolution<T> {
        let n = lp.num_vars();
        let retained = if presolve {
            match independent_rows(lp, eps) {
                Some(rows) => rows,
                None => return LpSolution::failed(Status::Infeasible, n, lp.num_rows(), Vec::new()),
            }
        } else {
            (0..lp.num_rows()).collect()
        };
        let m = retained.len();
        let width = n + m + 1;
        let mut signs = Vec::with_capacity(m);
        let mut tableau = Vec::with_capacity(m);
        for (i, &r) in retained.iter().enumerate() {
            let flip = lp.rhs[r] < T::zero();
            signs.push(flip);
            let mut row = Vec::with_capacity(width);
            for a in &lp.rows[r] {
                row.push(if flip { -a.clone() } else { a.clone() });
            }
            row.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
            row.push(if flip { -lp.rhs[r].clone() } else { lp.rhs[r].clone() });
            tableau.push(row);
        }
        let mut sx = Simplex { tableau, basis: (n..n + m).collect(), vars: n, eps, pivots: 0 };

        // Phase one: minimise the sum of artificials.
        let phase_one_cost: Vec<T> = (0..n + m).map(|j| if j < n { T::zero() } else { T::one() }).collect();
        let bounded = sx.optimise(&phase_one_cost, n + m);
        debug_assert!(bounded, "phase one is bounded below by zero");
        let infeasibility = sx.objective_value(&phase_one_cost);
        if infeasibility > *eps {
            return LpSolution::failed(Status::Infeasible, n, lp.num_rows(), retained);
        }
        sx.drive_out_artificials();

        // Phase two on the original objective; artificials may not re-enter.
        let mut cost = lp.objective.clone();
        cost.extend((0..m).map(|_| T::zero()));
        if !sx.optimise(&cost, n) {
            return LpSolution::failed(Status::Unbounded, n, lp.num_rows(), retained);
        }

        let mut x = vec![T::zero(); n];
        for (i, &b) in sx.basis.iter().enumerate() {
            if b < n {
                x[b] = sx.tableau[i][width - 1].clone();
            }
        }
        // yᵀ = c_Bᵀ B⁻¹; B⁻¹ sits in the artificial columns.
        let mut y = vec![T::zero(); lp.num_rows()];
        for (k, &r) in retained.iter().enumerate() {
            let mut v = T::zero();
            for (i, &b) in sx.basis.iter().enumerate() {
                v = v + cost[b].clone() * sx.tableau[i][n + k].clone();
            }
            y[r] = if signs[k] { -v } else { v };
        }
        let objective = lp.objective.iter().zip(&x).fold(T::zero(), |acc, (c, v)| acc + c.clone() * v.clone());
        LpSolution {
            status: Status::Optimal,
            x,
            objective,
            y,
            basis: sx.basis.clone(),
            retained_rows: retained,
            pivots: sx.pivots,
        }
    }

    fn rhs_col(&self) -> usize {
        self.tableau.first().map_or(0, |r| r.len() - 1)
    }

    fn objective_value(&self, cost: &[T]) -> T {
        let rhs = self.rhs_col();
        self.basis
            .iter()
            .zip(&self.tableau)
            .fold(T::zero(), |acc, (&b, row)| acc + cost[b].clone() * row[rhs].clone())
    }

    fn reduced_cost(&self, cost: &[T], j: usize) -> T {
        self.basis
            .iter()
            .zip(&self.tableau)
            .fold(cost[j].clone(), |acc, (&b, row)| acc - cost[b].clone() * row[j].clone())
    }

    /// Runs Bland's rule over columns `0..allowed`. Returns `false` if unbounded.
    fn optimise(&mut self, cost: &[T], allowed: usize) -> bool {
        let rhs = self.rhs_col();
        loop {
            let entering = (0..allowed)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(cost, j) < -self.eps.clone());
            let Some(j) = entering else { return true };
            let mut leave: Option<(usize, T)> = None;
            for (i, row) in self.tableau.iter().enumerate() {
                if row[j] > *self.eps {
                    let ratio = row[rhs].clone() / row[j].clone();
                    let better = match &leave {
                        None => true,
                        Some((k, best)) => {
                            ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((i, _)) => self.pivot(i, j),
                None => return false,
            }
        }
    }

    /// Replaces zero-level artificial basics by structural columns where possible.
    fn drive_out_artificials(&mut self) {
        for i in 0..self.basis.len() {
            if self.basis[i] < self.vars {
                continue;
            }
            let col = (0..self.vars)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.tableau[i][j].abs() > *self.eps);
            if let Some(j) = col {
                self.pivot(i, j);
            }
            // Otherwise the row is redundant and the artificial stays basic at zero.
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        self.pivots += 1;
        let p = self.tableau[r][c].clone();
        for v in self.tableau[r].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = self.tableau[r].clone();
        for (i, row) in self.tableau.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
            if !T::EXACT {
                // keep the pivot column clean
                row[c] = T::zero();
            }
        }
        self.basis[r] = c;
    }
}

impl<T: Scalar> LpSolution<T> {
    fn failed(status: Status, vars: usize, rows: usize, retained: Vec<usize>) -> Self {
        LpSolution {
            status,
            x: vec![T::zero(); vars],
            objective: T::zero(),
            y: vec![T::zero(); rows],
            basis: Vec::new(),
            retained_rows: retained,
            pivots: 0,
        }
    }
}

/// Picks a maximal set of linearly independent rows, in original order.
///
/// Returns `None` when a dependent row has an inconsistent right-hand side.
fn independent_rows<T: Scalar>(lp: &LinearProgram<T>, eps: &T) -> Option<Vec<usize>> {
    // reduced basis rows (with rhs appended) and their pivot columns
    let mut echelon: Vec<(usize, Vec<T>)> = Vec::new();
    let mut kept = Vec::new();
    let n = lp.num_vars();
    for (r, (row, b)) in lp.rows.iter().zip(&lp.rhs).enumerate() {
        let mut v: Vec<T> = row.iter().cloned().chain(std::iter::once(b.clone())).collect();
        for (p, e) in &echelon {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone() / e[*p].clone();
            for (x, ex) in v.iter_mut().zip(e) {
                *x = x.clone() - f.clone() * ex.clone();
            }
            v[*p] = T::zero();
        }
        let pivot = (0..n)
            .filter(|&j| v[j].abs() > *eps)
            .max_by(|&a, &b| v[a].abs().partial_cmp(&v[b].abs()).unwrap_or(std::cmp::Ordering::Equal));
        match pivot {
            Some(p) => {
                echelon.push((p, v));
                kept.push(r);
            }
            None => {
                let scale = row.iter().map(|x| x.abs()).fold(T::one(), |a, x| if x > a { x } else { a });
                if v[n].abs() > eps.clone() * scale {
                    return None;
                }
            }
        }
    }
    Some(kept)
}

impl LinearProgram<Rational> {
    /// Plain-text dump: a header line `lp <vars> <rows>`, the objective on a line
    /// starting with `c`, then one `row` line per constraint ending in `| b`.
    /// All numbers are rationals written as `p/q` or integers.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "lp {} {}", self.num_vars(), self.num_rows());
        let join = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "c {}", join(&self.objective));
        for (row, b) in self.rows.iter().zip(&self.rhs) {
            let _ = writeln!(out, "row {} | {}", join(row), b);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, LpError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| LpError::Parse("empty input".into()))?;
        let dims: Vec<usize> = header
            .strip_prefix("lp")
            .ok_or_else(|| LpError::Parse(format!("bad header `{header}`")))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| LpError::Parse(format!("bad dimension `{t}`"))))
            .collect::<Result<_, _>>()?;
        let [vars, rows] = dims[..] else {
            return Err(LpError::Parse("header needs two dimensions".into()));
        };
        let parse_all = |s: &str| -> Result<Vec<Rational>, LpError> {
            s.split_whitespace()
                .map(|t| parse_rational(t).ok_or_else(|| LpError::Parse(format!("bad number `{t}`"))))
                .collect()
        };
        let c_line = lines.next().ok_or_else(|| LpError::Parse("missing objective".into()))?;
        let objective = parse_all(
            c_line.strip_prefix('c').ok_or_else(|| LpError::Parse("objective line must start with `c`".into()))?,
        )?;
        let mut a = Vec::new();
        let mut b = Vec::new();
        for line in lines {
            let body = line.strip_prefix("row").ok_or_else(|| LpError::Parse(format!("bad row `{line}`")))?;
            let (lhs, rhs) = body.split_once('|').ok_or_else(|| LpError::Parse(format!("row without `|`: {line}")))?;
            a.push(parse_all(lhs)?);
            let mut r = parse_all(rhs)?;
            if r.len() != 1 {
                return Err(LpError::Parse(format!("row needs exactly one right-hand side: {line}")));
            }
            b.push(r.remove(0));
        }
        if objective.len() != vars || a.len() != rows {
            return Err(LpError::Parse(format!(
                "header says {vars}×{rows}, found {} variables and {} rows",
                objective.len(),
                a.len()
            )));
        }
        LinearProgram::new(objective, a, b)
    }
}

impl LinearProgram<f64> {
    pub fn from_exact(lp: &LinearProgram<Rational>) -> Self {
        let conv = |v: &[Rational]| v.iter().map(Scalar::to_f64).collect::<Vec<f64>>();
        LinearProgram {
            objective: conv(&lp.objective),
            rows: lp.rows.iter().map(|r| conv(r)).collect(),
            rhs: conv(&lp.rhs),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| ratio(x, 1)).collect()
    }

    #[test]
    fn simple_optimum() {
        let lp = LinearProgram::new(q(&[1, 0]), vec![q(&[1, 1])], q(&[1])).unwrap();
        let sol = lp.solve().unwrap();
        assert_eq!(sol.status, Status::Optimal);
        assert_eq!(sol.objective, ratio(0, 1));
        assert_eq!(sol.x, q(&[0, 1]));
        assert!(lp.verify(&sol, 0.0).passed());
    }

    #[test]
    fn infeasible_and_unbounded() {
        let lp = LinearProgram::new(q(&[1]), vec![q(&[1]), q(&[1])], q(&[1, 2])).unwrap();
        assert_eq!(lp.solve().unwrap().status, Status::Infeasible);
        let no_presolve = lp.solve_with(SolveOptions { presolve: false, ..Default::default() }).unwrap();
        assert_eq!(no_presolve.status, Status::Infeasible);

        let lp = LinearProgram::new(q(&[-1, 0]), vec![q(&[0, 1])], q(&[1])).unwrap();
        assert_eq!(lp.solve().unwrap().status, Status::Unbounded);

        let lpf = LinearProgram::new(vec![1.0], vec![vec![1.0], vec![1.0]], vec![1.0, 2.0]).unwrap();
        assert_eq!(lpf.solve().unwrap().status, Status::Infeasible);
    }

    #[test]
    fn dimension_errors() {
        assert!(LinearProgram::new(q(&[1, 1]), vec![q(&[1])], q(&[1])).is_err());
        assert!(LinearProgram::new(q(&[1]), vec![q(&[1])], q(&[1, 2])).is_err());
        assert!(matches!(
            LinearProgram::new(vec![f64::NAN], vec![vec![1.0]], vec![1.0]),
            Err(LpError::NotFinite)
        ));
    }

    #[test]
    fn redundant_rows_get_zero_duals() {
        // min x1 + 2 x2 + 3 x3, x1 + x2 + x3 = 1 (listed twice), x2 - x3 = 0, plus a sum of the two
        let lp = LinearProgram::new(
            q(&[3, 2, 3]),
            vec![q(&[1, 1, 1]), q(&[2, 2, 2]), q(&[0, 1, -1]), q(&[1, 2, 0])],
            q(&[1, 2, 0, 1]),
        )
        .unwrap();
        let sol = lp.solve().unwrap();
        assert_eq!(sol.status, Status::Optimal);
        // row 3 is row 0 + row 2
        assert_eq!(sol.retained_rows, vec![0, 2]);
        assert_eq!(sol.y[1], ratio(0, 1));
        assert_eq!(sol.y[3], ratio(0, 1));
        assert!(lp.verify(&sol, 0.0).passed());
        let plain = lp.solve_with(SolveOptions { presolve: false, ..Default::default() }).unwrap();
        assert_eq!(plain.objective, sol.objective);
        assert!(lp.verify(&plain, 0.0).passed());
    }

    #[test]
    fn perturbations_fail_verification() {
        // min x1 + x2 s.t. x1 - x2 = 1 → x = (1, 0), y = 1
        let lp = LinearProgram::new(q(&[1, 1]), vec![q(&[1, -1])], q(&[1])).unwrap();
        let sol = lp.solve().unwrap();
        assert_eq!(sol.objective, ratio(1, 1));
        assert!(lp.verify(&sol, 0.0).passed());

        let mut bumped = sol.clone();
        bumped.x[0] += ratio(1, 1);
        assert!(!lp.verify(&bumped, 0.0).feasible);

        let mut flipped = sol.clone();
        flipped.y = flipped.y.iter().map(|v| -v).collect();
        let report = lp.verify(&flipped, 0.0);
        assert!(!report.strong_duality);
        assert!(!report.passed());
    }

    #[test]
    fn float_matches_exact() {
        let lp = LinearProgram::new(
            q(&[2, 3, 1, 4]),
            vec![q(&[1, 1, 1, 1]), q(&[1, -1, 2, 0]), q(&[0, 1, 1, 3])],
            q(&[4, 2, 3]),
        )
        .unwrap();
        let exact = lp.solve().unwrap();
        let float = LinearProgram::from_exact(&lp).solve().unwrap();
        assert_eq!(exact.status, Status::Optimal);
        let e = exact.objective.to_f64();
        assert!((float.objective - e).abs() <= 1e-6 * e.abs().max(1.0));
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's classic cycling instance, in equality form with slacks.
        let c = vec![ratio(-3, 4), ratio(150, 1), ratio(-1, 50), ratio(6, 1), ratio(0, 1), ratio(0, 1), ratio(0, 1)];
        let rows = vec![
            vec![ratio(1, 4), ratio(-60, 1), ratio(-1, 25), ratio(9, 1), ratio(1, 1), ratio(0, 1), ratio(0, 1)],
            vec![ratio(1, 2), ratio(-90, 1), ratio(-1, 50), ratio(3, 1), ratio(0, 1), ratio(1, 1), ratio(0, 1)],
            vec![ratio(0, 1), ratio(0, 1), ratio(1, 1), ratio(0, 1), ratio(0, 1), ratio(0, 1), ratio(1, 1)],
        ];
        let lp = LinearProgram::new(c, rows, q(&[0, 0, 1])).unwrap();
        let sol = lp.solve().unwrap();
        assert_eq!(sol.status, Status::Optimal);
        assert_eq!(sol.objective, ratio(-1, 20));
        assert!(lp.verify(&sol, 0.0).passed());
    }

    #[test]
    fn text_dump_round_trips() {
        let lp = LinearProgram::new(
            vec![ratio(1, 2), ratio(-3, 1)],
            vec![vec![ratio(1, 1), ratio(2, 3)]],
            vec![ratio(5, 7)],
        )
        .unwrap();
        let text = lp.to_text();
        assert_eq!(text, "lp 2 1\nc 1/2 -3\nrow 1 2/3 | 5/7\n");
        assert_eq!(LinearProgram::from_text(&text).unwrap(), lp);
        assert!(LinearProgram::from_text("lp 2 1\nc 1\n").is_err());
        assert!(LinearProgram::from_text("nope").is_err());
    }
}
