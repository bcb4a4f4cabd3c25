//! Monte Carlo estimate of fixed modes: eigenvalues of `A + B K C` that stay
//! put while the gains in `K` are redrawn.

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::analysis::is_feasible;
use crate::system::{InformationPattern, ModelError, StructuralPattern, StructuralSystem};

pub type Complex64 = Complex<f64>;

/// Default eigenvalue matching tolerance, relative to the spectral radius.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
/// Default number of gain draws.
pub const DEFAULT_TRIALS: usize = 20;

const PLANT_STREAM: u64 = 0;
const GAIN_STREAM: u64 = 1;
const RERUN_STREAM: u64 = 2;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("at least two trials are needed, got {0}")]
    TooFewTrials(usize),
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("eigenvalue computation did not converge")]
    EigenFailure,
}

/// Draws a value uniformly from `[-1, -0.1] U [0.1, 1]`.
fn draw_nonzero(rng: &mut ChaCha8Rng) -> f64 {
    let magnitude = rng.random_range(0.1..=1.0);
    if rng.random_bool(0.5) {
        -magnitude
    } else {
        magnitude
    }
}

fn draw(pattern: &StructuralPattern, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(pattern.rows(), pattern.cols());
    for (r, c) in pattern.nonzeros() {
        m[(r, c)] = draw_nonzero(rng);
    }
    m
}

/// Real matrix with random values on the pattern's non-zeros and exact zeros
/// elsewhere.
pub fn sample_instance(pattern: &StructuralPattern, seed: u64) -> DMatrix<f64> {
    draw(pattern, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Numeric realisation of a structural system.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericInstance {
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
    pub c: DMatrix<f64>,
}

impl NumericInstance {
    pub fn sample(sys: &StructuralSystem, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(PLANT_STREAM);
        Self {
            a: draw(sys.a(), &mut rng),
            b: draw(sys.b(), &mut rng),
            c: draw(sys.c(), &mut rng),
        }
    }

    fn closed_loop(&self, k: &DMatrix<f64>) -> DMatrix<f64> {
        &self.a + &self.b * k * &self.c
    }
}

pub trait SpectrumSolver: Sync {
    fn eigenvalues(&self, m: &DMatrix<f64>) -> Result<Vec<Complex64>, NumericError>;
}

/// Eigenvalues from the real Schur form.
#[derive(Debug, Clone, Copy)]
pub struct SchurSolver {
    pub eps: f64,
    pub max_iterations: usize,
}

impl Default for SchurSolver {
    fn default() -> Self {
        Self {
            eps: f64::EPSILON,
            max_iterations: 10_000,
        }
    }
}

impl SpectrumSolver for SchurSolver {
    fn eigenvalues(&self, m: &DMatrix<f64>) -> Result<Vec<Complex64>, NumericError> {
        if m.nrows() == 0 {
            return Ok(Vec::new());
        }
        let schur = m
            .clone()
            .try_schur(self.eps, self.max_iterations)
            .ok_or(NumericError::EigenFailure)?;
        Ok(schur.complex_eigenvalues().iter().copied().collect())
    }
}

fn serialize_modes<S: Serializer>(modes: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(modes.iter().map(|z| [z.re, z.im]))
}

/// Eigenvalues of the first draw that every later draw reproduced.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedModeEstimate {
    #[serde(serialize_with = "serialize_modes")]
    pub candidate_modes: Vec<Complex64>,
    pub trials: usize,
    pub tolerance: f64,
}

impl FixedModeEstimate {
    pub fn is_empty(&self) -> bool {
        self.candidate_modes.is_empty()
    }
}

fn smallest_singular_value(lambda: Complex64, m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let shifted = DMatrix::from_fn(n, n, |r, c| {
        let diag = if r == c {
            lambda
        } else {
            Complex::new(0.0, 0.0)
        };
        diag - Complex::new(m[(r, c)], 0.0)
    });
    shifted.singular_values().min()
}

/// Keeps the candidates that some eigenvalue of `m` reproduces. A candidate
/// survives if it is paired with an eigenvalue within `tol * max(1, rho)`
/// (closest pairs first) or if `lambda I - m` is numerically singular, which
/// catches defective eigenvalues whose computed copies spread out.
fn intersect(
    candidates: Vec<Complex64>,
    spectrum: &[Complex64],
    m: &DMatrix<f64>,
    tol: f64,
) -> Vec<Complex64> {
    let radius = spectrum.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let threshold = tol * radius.max(1.0);
    let mut pairs: Vec<(f64, usize, usize)> = candidates
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| {
            spectrum
                .iter()
                .enumerate()
                .map(move |(si, s)| ((c - s).norm(), ci, si))
        })
        .filter(|&(d, _, _)| d <= threshold)
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then((x.1, x.2).cmp(&(y.1, y.2))));
    let mut kept = vec![false; candidates.len()];
    let mut used = vec![false; spectrum.len()];
    for (_, ci, si) in pairs {
        if !kept[ci] && !used[si] {
            kept[ci] = true;
            used[si] = true;
        }
    }
    let singular_threshold = tol * m.norm().max(1.0);
    candidates
        .into_iter()
        .zip(kept)
        .filter(|&(c, k)| k || smallest_singular_value(c, m) <= singular_threshold)
        .map(|(c, _)| c)
        .collect()
}

fn estimate(
    inst: &NumericInstance,
    k: &InformationPattern,
    trials: usize,
    tol: f64,
    rng: &mut ChaCha8Rng,
    solver: &dyn SpectrumSolver,
) -> Result<FixedModeEstimate, NumericError> {
    if trials < 2 {
        return Err(NumericError::TooFewTrials(trials));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(NumericError::BadTolerance(tol));
    }
    if k.shape() != (inst.b.ncols(), inst.c.nrows()) {
        return Err(ModelError::DimensionMismatch {
            what: "K",
            expected_rows: inst.b.ncols(),
            expected_cols: inst.c.nrows(),
            rows: k.rows(),
            cols: k.cols(),
        }
        .into());
    }
    let first = inst.closed_loop(&draw(k.pattern(), rng));
    let mut candidates = solver.eigenvalues(&first)?;
    for _ in 1..trials {
        if candidates.is_empty() {
            break;
        }
        let m = inst.closed_loop(&draw(k.pattern(), rng));
        let spectrum = solver.eigenvalues(&m)?;
        candidates = intersect(candidates, &spectrum, &m, tol);
    }
    Ok(FixedModeEstimate {
        candidate_modes: candidates,
        trials,
        tolerance: tol,
    })
}

/// Draws `trials` gain matrices on `k` and returns the eigenvalues of the
/// first closed loop that persist through all of them.
pub fn estimate_fixed_modes(
    inst: &NumericInstance,
    k: &InformationPattern,
    trials: usize,
    tol: f64,
    seed: u64,
) -> Result<FixedModeEstimate, NumericError> {
    estimate_fixed_modes_with(inst, k, trials, tol, seed, &SchurSolver::default())
}

pub fn estimate_fixed_modes_with(
    inst: &NumericInstance,
    k: &InformationPattern,
    trials: usize,
    tol: f64,
    seed: u64,
    solver: &dyn SpectrumSolver,
) -> Result<FixedModeEstimate, NumericError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(GAIN_STREAM);
    estimate(inst, k, trials, tol, &mut rng, solver)
}

/// Structural verdict next to the numeric estimate for one seeded instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossValidation {
    pub seed: u64,
    pub structurally_feasible: bool,
    pub estimate: FixedModeEstimate,
    /// Set when a feasible pattern showed candidates and the gains were redrawn
    /// with four times as many trials.
    pub rerun: bool,
    pub agrees: bool,
}

/// Samples the plant and gains from `seed`; agreement means the pattern is
/// feasible exactly when no candidate fixed mode survives.
pub fn cross_validate(
    sys: &StructuralSystem,
    k: &InformationPattern,
    trials: usize,
    tol: f64,
    seed: u64,
) -> Result<CrossValidation, NumericError> {
    let structurally_feasible = is_feasible(sys, k)?;
    let inst = NumericInstance::sample(sys, seed);
    let solver = SchurSolver::default();
    let mut result = estimate_fixed_modes_with(&inst, k, trials, tol, seed, &solver)?;
    let mut rerun = false;
    if structurally_feasible && !result.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(RERUN_STREAM);
        result = estimate(&inst, k, trials * 4, tol, &mut rng, &solver)?;
        rerun = true;
    }
    Ok(CrossValidation {
        seed,
        structurally_feasible,
        agrees: structurally_feasible == result.is_empty(),
        estimate: result,
        rerun,
    })
}
