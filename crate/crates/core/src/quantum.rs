//! Quantum correlation scenarios: Born-rule behaviors from a density operator
//! and per-party measurement families, canonical states, seeded random models
//! and closed-form bounds on the nonlocality parameter of N-qudit states.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::behavior::Behavior;
use crate::error::{Error, Result};
use crate::scenario::Scenario;

pub type CMatrix = DMatrix<Complex64>;

/// Hermiticity, positivity and completeness tolerance.
pub const OPERATOR_TOLERANCE: f64 = 1e-10;
/// Allowed deviation of `tr ρ` from one.
pub const TRACE_TOLERANCE: f64 = 1e-12;

/// A state with one POVM per (party, setting).
#[derive(Clone, Debug)]
pub struct QuantumModel {
    scenario: Scenario,
    local_dims: Vec<usize>,
    state: CMatrix,
    /// `measurements[n][s][λ]`.
    measurements: Vec<Vec<Vec<CMatrix>>>,
    projective: bool,
}

impl QuantumModel {
    pub fn new(
        scenario: Scenario,
        local_dims: Vec<usize>,
        state: CMatrix,
        measurements: Vec<Vec<Vec<CMatrix>>>,
    ) -> Result<Self> {
        let parties = scenario.parties();
        if local_dims.len() != parties || local_dims.contains(&0) {
            return Err(Error::Quantum(format!("need {parties} positive local dimensions, got {local_dims:?}")));
        }
        let total: usize = local_dims.iter().product();
        if state.nrows() != total || state.ncols() != total {
            return Err(Error::Quantum(format!(
                "state is {}×{}, local dimensions multiply to {total}",
                state.nrows(),
                state.ncols()
            )));
        }
        check_density(&state)?;
        if measurements.len() != parties {
            return Err(Error::Quantum(format!("{} measurement families for {parties} parties", measurements.len())));
        }
        let mut projective = true;
        for (n, family) in measurements.iter().enumerate() {
            if family.len() != scenario.settings()[n] {
                return Err(Error::Quantum(format!(
                    "party {n} has {} settings but {} measurements",
                    scenario.settings()[n],
                    family.len()
                )));
            }
            for (s, povm) in family.iter().enumerate() {
                if povm.len() != scenario.outcomes()[n] {
                    return Err(Error::Quantum(format!(
                        "party {n} setting {s}: {} elements for {} outcomes",
                        povm.len(),
                        scenario.outcomes()[n]
                    )));
                }
                check_povm(povm, local_dims[n]).map_err(|e| Error::Quantum(format!("party {n} setting {s}: {e}")))?;
                projective &= is_projective(povm);
            }
        }
        Ok(QuantumModel { scenario, local_dims, state, measurements, projective })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn local_dims(&self) -> &[usize] {
        &self.local_dims
    }

    pub fn state(&self) -> &CMatrix {
        &self.state
    }

    pub fn measurements(&self) -> &[Vec<Vec<CMatrix>>] {
        &self.measurements
    }

    /// True when every element is an orthogonal projector and elements are mutually orthogonal.
    pub fn is_projective(&self) -> bool {
        self.projective
    }

    /// `P(λ|s) = tr[ρ (M¹_{λ₁,s₁} ⊗ ⋯ ⊗ Mᴺ_{λ_N,s_N})]`, as a float behavior.
    pub fn born_behavior(&self) -> Result<Behavior> {
        let sc = &self.scenario;
        let mut tables = Vec::with_capacity(sc.settings_tuples());
        for t in 0..sc.settings_tuples() {
            let settings = sc.settings_tuple(t);
            let mut table = Vec::with_capacity(sc.outcome_tuples());
            for o in 0..sc.outcome_tuples() {
                let outcome = sc.outcome_tuple(o);
                let mut op = self.measurements[0][settings[0]][outcome[0]].clone();
                for n in 1..sc.parties() {
                    op = op.kronecker(&self.measurements[n][settings[n]][outcome[n]]);
                }
                table.push(trace_product(&self.state, &op).re);
            }
            tables.push(table);
        }
        Behavior::new(sc, tables, OPERATOR_TOLERANCE)
    }
}

/// `tr[A B]` without forming the product.
fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

fn hermiticity_defect(m: &CMatrix) -> f64 {
    (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn min_eigenvalue(m: &CMatrix) -> f64 {
    let herm = (m + m.adjoint()).scale(0.5);
    herm.symmetric_eigen().eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

fn check_density(rho: &CMatrix) -> Result<()> {
    let defect = hermiticity_defect(rho);
    if defect > OPERATOR_TOLERANCE {
        return Err(Error::Quantum(format!("state is not Hermitian (defect {defect:e})")));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > TRACE_TOLERANCE || tr.im.abs() > TRACE_TOLERANCE {
        return Err(Error::Quantum(format!("state has trace {tr}")));
    }
    let low = min_eigenvalue(rho);
    if low < -OPERATOR_TOLERANCE {
        return Err(Error::Quantum(format!("state has negative eigenvalue {low:e}")));
    }
    Ok(())
}

fn check_povm(povm: &[CMatrix], dim: usize) -> std::result::Result<(), String> {
    let mut sum = CMatrix::zeros(dim, dim);
    for (k, e) in povm.iter().enumerate() {
        if e.nrows() != dim || e.ncols() != dim {
            return Err(format!("element {k} is {}×{}, expected {dim}×{dim}", e.nrows(), e.ncols()));
        }
        if hermiticity_defect(e) > OPERATOR_TOLERANCE {
            return Err(format!("element {k} is not Hermitian"));
        }
        let low = min_eigenvalue(e);
        if low < -OPERATOR_TOLERANCE {
            return Err(format!("element {k} has negative eigenvalue {low:e}"));
        }
        sum += e;
    }
    let defect = (sum - CMatrix::identity(dim, dim)).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if defect > OPERATOR_TOLERANCE {
        return Err(format!("elements sum to identity only within {defect:e}"));
    }
    Ok(())
}

fn is_projective(povm: &[CMatrix]) -> bool {
    let close = |m: &CMatrix| m.iter().all(|z| z.norm() <= OPERATOR_TOLERANCE);
    povm.iter().enumerate().all(|(i, a)| {
        close(&(a * a - a)) && povm[i + 1..].iter().all(|b| close(&(a * b)))
    })
}

/// `|ψ⟩⟨ψ|` for a normalized vector.
pub fn pure_state(psi: &DVector<Complex64>) -> CMatrix {
    psi * psi.adjoint()
}

fn basis_vector(dim: usize, index: usize) -> DVector<Complex64> {
    let mut v = DVector::zeros(dim);
    v[index] = Complex64::new(1.0, 0.0);
    v
}

/// `(|01⟩ − |10⟩)/√2`.
pub fn singlet() -> CMatrix {
    let psi = (basis_vector(4, 1) - basis_vector(4, 2)).scale(FRAC_1_SQRT_2);
    pure_state(&psi)
}

/// `(|0…0⟩ + |1…1⟩)/√2` on `n ≥ 2` qubits.
pub fn ghz(n: usize) -> Result<CMatrix> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("GHZ needs at least 2 qubits, got {n}")));
    }
    let dim = 1usize << n;
    let psi = (basis_vector(dim, 0) + basis_vector(dim, dim - 1)).scale(FRAC_1_SQRT_2);
    Ok(pure_state(&psi))
}

/// `Σ_k |kk⟩/√d`.
pub fn max_entangled(d: usize) -> Result<CMatrix> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("local dimension must be at least 2, got {d}")));
    }
    let mut psi = DVector::zeros(d * d);
    for k in 0..d {
        psi[k * d + k] = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    }
    Ok(pure_state(&psi))
}

/// Reduced state of one party, tracing out all others.
pub fn reduced_state(rho: &CMatrix, dims: &[usize], party: usize) -> CMatrix {
    let d = dims[party];
    let before: usize = dims[..party].iter().product();
    let after: usize = dims[party + 1..].iter().product();
    let mut out = CMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 0..before {
                for b in 0..after {
                    let r = (a * d + i) * after + b;
                    let c = (a * d + j) * after + b;
                    acc += rho[(r, c)];
                }
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// Projectors onto `±(sinθ cosφ, sinθ sinφ, cosθ)`; element 0 is the `+` direction.
pub fn qubit_projector(theta: f64, phi: f64) -> Vec<CMatrix> {
    let (x, y, z) = (theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos());
    let projector = |sign: f64| {
        let h = 0.5;
        CMatrix::from_row_slice(2, 2, &[
            Complex64::new(h * (1.0 + sign * z), 0.0),
            Complex64::new(h * sign * x, -h * sign * y),
            Complex64::new(h * sign * x, h * sign * y),
            Complex64::new(h * (1.0 - sign * z), 0.0),
        ])
    };
    vec![projector(1.0), projector(-1.0)]
}

/// Singlet with Bloch angles (x–z plane) `A ∈ {0, π/2}` and `B ∈ {5π/4, 3π/4}`.
///
/// Outcome 0 is the `+1` eigenvalue, so the lifted CHSH value is `2√2`.
pub fn chsh_optimal_model() -> QuantumModel {
    chsh_measurements_on(singlet()).expect("valid singlet model")
}

/// The CHSH-optimal measurements on the maximally mixed two-qubit state.
pub fn maximally_mixed_model() -> QuantumModel {
    chsh_measurements_on(CMatrix::identity(4, 4).scale(0.25)).expect("valid mixed-state model")
}

fn chsh_measurements_on(state: CMatrix) -> Result<QuantumModel> {
    let alice = vec![qubit_projector(0.0, 0.0), qubit_projector(FRAC_PI_2, 0.0)];
    let bob = vec![qubit_projector(PI + FRAC_PI_4, 0.0), qubit_projector(3.0 * FRAC_PI_4, 0.0)];
    QuantumModel::new(Scenario::chsh(), vec![2, 2], state, vec![alice, bob])
}

fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im)
    })
}

/// Haar-random unitary via QR of a complex Ginibre matrix with phase fixing.
pub fn haar_unitary(rng: &mut ChaCha8Rng, d: usize) -> CMatrix {
    let qr = gaussian_matrix(rng, d, d).qr();
    let (q, r) = (qr.q(), qr.r());
    let mut u = q;
    for k in 0..d {
        let z = r[(k, k)];
        let phase = if z.norm() > 0.0 { z / z.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..d {
            u[(i, k)] *= phase;
        }
    }
    u
}

fn haar_pure_state(rng: &mut ChaCha8Rng, dim: usize) -> CMatrix {
    let v = gaussian_matrix(rng, dim, 1);
    let psi = DVector::from_column_slice(v.as_slice());
    let norm = psi.norm();
    pure_state(&psi.unscale(norm))
}

fn random_projective(rng: &mut ChaCha8Rng, d: usize) -> Vec<CMatrix> {
    let u = haar_unitary(rng, d);
    (0..d)
        .map(|k| {
            let col = u.column(k).into_owned();
            &col * col.adjoint()
        })
        .collect()
}

fn random_povm(rng: &mut ChaCha8Rng, d: usize) -> Vec<CMatrix> {
    let raw: Vec<CMatrix> = (0..d)
        .map(|_| {
            let x = gaussian_matrix(rng, d, d);
            &x * x.adjoint()
        })
        .collect();
    let total = raw.iter().fold(CMatrix::zeros(d, d), |acc, g| acc + g);
    let eig = total.symmetric_eigen();
    let inv_sqrt = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new(1.0 / l.sqrt(), 0.0)));
    let s = &eig.eigenvectors * inv_sqrt * eig.eigenvectors.adjoint();
    raw.iter()
        .map(|g| {
            let e = &s * g * &s;
            (&e + e.adjoint()).scale(0.5)
        })
        .collect()
}

/// Haar-random pure state with random projective (Haar basis) or generalized measurements.
///
/// Uses ChaCha8 seeded from `seed`, so the same seed always gives the same model.
pub fn random_model(scenario: &Scenario, seed: u64, projective: bool) -> Result<QuantumModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = scenario.outcomes().to_vec();
    let state = haar_pure_state(&mut rng, dims.iter().product());
    let measurements = scenario
        .settings()
        .iter()
        .zip(&dims)
        .map(|(&settings, &d)| {
            (0..settings)
                .map(|_| if projective { random_projective(&mut rng, d) } else { random_povm(&mut rng, d) })
                .collect()
        })
        .collect();
    QuantumModel::new(scenario.clone(), dims, state, measurements)
}

fn check_bound_params(d: usize, settings: usize, parties: usize) -> Result<()> {
    if d < 2 || settings < 1 || parties < 2 {
        return Err(Error::InvalidParameter(format!(
            "bounds need d >= 2, S >= 1, N >= 2 (got d = {d}, S = {settings}, N = {parties})"
        )));
    }
    Ok(())
}

/// `(2 min{d, S} − 1)^{N−1}`: S-setting bound under generalized measurements.
pub fn bound_general(d: usize, settings: usize, parties: usize) -> Result<f64> {
    check_bound_params(d, settings, parties)?;
    Ok(((2 * d.min(settings) - 1) as f64).powi(parties as i32 - 1))
}

/// `(2d − 1)^{N−1}`: bound over all setting counts under generalized measurements.
pub fn bound_full(d: usize, parties: usize) -> Result<f64> {
    check_bound_params(d, 1, parties)?;
    Ok(((2 * d - 1) as f64).powi(parties as i32 - 1))
}

/// Bound under projective measurements:
/// `min{d^{(N−1)/2}, 3^{N−1}}` for `S = 2`, `min{d^{S(N−1)/2}, (2 min{d,S} − 1)^{N−1}}` otherwise.
pub fn bound_projective(d: usize, settings: usize, parties: usize) -> Result<f64> {
    check_bound_params(d, settings, parties)?;
    let n1 = (parties - 1) as f64;
    let general = bound_general(d, settings, parties)?;
    let dim_term = (d as f64).powf(settings as f64 * n1 / 2.0);
    if settings == 2 {
        Ok((d as f64).powf(n1 / 2.0).min(3f64.powf(n1)))
    } else {
        Ok(dim_term.min(general))
    }
}
