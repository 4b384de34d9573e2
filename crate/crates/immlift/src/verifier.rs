//! Randomized verification of scalar and matrix-valued inequalities against
//! seeded ensembles, with deterministic, machine-readable reports.
//!
//! Every trial derives its own random streams from `(seed, trial, slot)`, so
//! results are independent of scheduling; parallel reduction uses only
//! order-insensitive operations (min, max, sum), making reports byte-identical
//! across thread counts.

use crate::characters::GroupFunction;
use crate::error::{Error, Result};
use crate::gmf::gmf_value;
use crate::matrix::{derive_seed, random_ginibre, random_psd, ComplexMatrix};
use crate::tracepoly::TracePolynomial;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Absolute ceiling on relative Hermiticity defects before a matrix-valued
/// trial counts as violated, independent of the margin tolerance.
pub const DEFAULT_PSD_TOL: f64 = 1e-9;

/// What shape of statement a spec asserts. The scalar/Löwner "difference"
/// kinds behave like their "nonneg" counterparts at run time (the payload
/// already encodes the weighted difference); the distinction is kept for
/// reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecKind {
    /// A weighted sum of generalized matrix functions is nonnegative on the
    /// sampled ensemble.
    ScalarNonneg,
    /// A difference of generalized matrix functions is nonnegative.
    ScalarDifference,
    /// A weighted sum of trace polynomials is positive semidefinite.
    LoewnerNonneg,
    /// A difference of trace polynomials is positive semidefinite.
    LoewnerDifference,
    /// A weighted sum of trace polynomials vanishes identically.
    MatrixIdentity,
}

/// Random input ensemble for each sampled matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ensemble {
    /// Wishart PSD matrices, optionally normalized to unit trace.
    Psd { trace_one: bool },
    /// Unconstrained complex Gaussian matrices (for identities, which must
    /// hold everywhere).
    Ginibre,
}

/// How trial inputs are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplerConfig {
    pub ensemble: Ensemble,
    /// Overrides the run-time variable dimension when the statement only
    /// holds at a specific one.
    pub fixed_dim: Option<usize>,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            ensemble: Ensemble::Psd { trace_one: false },
            fixed_dim: None,
        }
    }
}

/// One weighted generalized matrix function in a scalar statement.
#[derive(Clone, Debug)]
pub struct ScalarTerm {
    pub weight: f64,
    pub function: GroupFunction,
}

/// The mathematical content of a spec.
#[derive(Clone, Debug)]
pub enum Payload {
    /// `sum_i w_i d_{f_i}(A) >= 0` for one sampled matrix `A`.
    Scalar(Vec<ScalarTerm>),
    /// `sum_i w_i P_i(X_1..X_{n-1})` is PSD for sampled tuples.
    Loewner(Vec<(f64, TracePolynomial)>),
    /// `sum_i w_i P_i(X_1..X_{n-1}) = 0` for sampled tuples.
    Identity(Vec<(f64, TracePolynomial)>),
}

impl Payload {
    /// Common permutation degree of all terms.
    pub fn degree(&self) -> Result<usize> {
        let degrees: Vec<usize> = match self {
            Payload::Scalar(terms) => terms.iter().map(|t| t.function.degree()).collect(),
            Payload::Loewner(terms) | Payload::Identity(terms) => {
                terms.iter().map(|(_, p)| p.degree()).collect()
            }
        };
        let Some((&first, rest)) = degrees.split_first() else {
            return Err(Error::invalid("spec payload", "no terms"));
        };
        if let Some(&bad) = rest.iter().find(|&&d| d != first) {
            return Err(Error::DegreeMismatch(first, bad));
        }
        Ok(first)
    }
}

/// A named, runnable statement.
#[derive(Clone, Debug)]
pub struct InequalitySpec {
    pub name: String,
    pub kind: SpecKind,
    pub payload: Payload,
    pub sampler: SamplerConfig,
    /// Conjectures report counterexample-search outcomes rather than
    /// pass/fail verdicts.
    pub conjecture: bool,
}

impl InequalitySpec {
    pub fn degree(&self) -> Result<usize> {
        self.payload.degree()
    }

    /// Number of matrices sampled per trial.
    pub fn arity(&self) -> Result<usize> {
        let degree = self.degree()?;
        Ok(match self.payload {
            Payload::Scalar(_) => 1,
            Payload::Loewner(_) | Payload::Identity(_) => degree - 1,
        })
    }
}

/// Run-time knobs shared by all specs.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RunOptions {
    pub trials: u64,
    /// Variable dimension for matrix-valued specs (scalar specs sample at
    /// the degree, and `fixed_dim` overrides this).
    pub dim: usize,
    pub seed: u64,
    /// Relative tolerance on the trial margin.
    pub tol: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            trials: 1000,
            dim: 3,
            seed: 0,
            tol: 1e-8,
        }
    }
}

/// Outcome of a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Asserted statement held on every trial.
    Pass,
    /// Asserted statement violated (implementation or identity failure).
    Fail,
    /// A conjectured or asserted inequality found a violating input.
    Counterexample,
    /// A conjecture survived every trial.
    NoCounterexample,
}

/// A violating input, replayable from the seed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Counterexample {
    /// Trial index; inputs regenerate from `(seed, trial, slot)`.
    pub trial: u64,
    pub matrices: Vec<ComplexMatrix>,
    /// Normalized margin of that trial.
    pub statistic: f64,
}

/// Machine-readable result of running one spec.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub spec: String,
    pub kind: SpecKind,
    pub trials: u64,
    /// Dimension of each sampled matrix.
    pub dim: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Worst (smallest) normalized margin across trials: the smallest
    /// eigenvalue for Löwner specs, the weighted value for scalar specs, and
    /// minus the residual norm for identities, each divided by
    /// `max(1, scale)` of its trial.
    pub min_statistic: f64,
    /// Largest relative deviation from the expected symmetry: Hermiticity
    /// defect for matrix-valued specs, imaginary residue for scalar ones.
    pub hermiticity_defect_max: f64,
    pub failures: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

/// Payload with run-time precomputation done (Löwner terms combined).
enum Prepared {
    Scalar(Vec<ScalarTerm>),
    Loewner(TracePolynomial),
    Identity(Vec<(f64, TracePolynomial)>),
}

fn prepare(spec: &InequalitySpec) -> Result<Prepared> {
    match (&spec.payload, spec.kind) {
        (Payload::Scalar(terms), SpecKind::ScalarNonneg | SpecKind::ScalarDifference) => {
            Ok(Prepared::Scalar(terms.clone()))
        }
        (Payload::Loewner(terms), SpecKind::LoewnerNonneg | SpecKind::LoewnerDifference) => {
            let degree = spec.payload.degree()?;
            let mut combined = TracePolynomial::zero(degree);
            for (w, p) in terms {
                combined = combined.add(&p.scaled(Complex64::new(*w, 0.0)))?;
            }
            Ok(Prepared::Loewner(combined))
        }
        (Payload::Identity(terms), SpecKind::MatrixIdentity) => {
            Ok(Prepared::Identity(terms.clone()))
        }
        _ => Err(Error::invalid(
            "spec",
            format!("kind {:?} does not match its payload shape", spec.kind),
        )),
    }
}

fn sample_matrix(ensemble: Ensemble, dim: usize, seed: u64) -> ComplexMatrix {
    match ensemble {
        Ensemble::Psd { trace_one } => random_psd(dim, seed, trace_one),
        Ensemble::Ginibre => random_ginibre(dim, dim, seed),
    }
}

fn sample_inputs(
    ensemble: Ensemble,
    arity: usize,
    dim: usize,
    seed: u64,
    trial: u64,
) -> Vec<ComplexMatrix> {
    (0..arity)
        .map(|slot| sample_matrix(ensemble, dim, derive_seed(seed, trial, slot as u64)))
        .collect()
}

/// Normalized (margin, defect) of one trial on the given inputs.
fn trial_statistic(prepared: &Prepared, xs: &[ComplexMatrix]) -> Result<(f64, f64)> {
    match prepared {
        Prepared::Scalar(terms) => {
            let a = &xs[0];
            let mut value = Complex64::new(0.0, 0.0);
            let mut abs_sum = 0.0;
            for term in terms {
                let d = gmf_value(&term.function, a)?;
                value += d * term.weight;
                abs_sum += (d * term.weight).norm();
            }
            let s = abs_sum.max(1.0);
            Ok((value.re / s, value.im.abs() / s))
        }
        Prepared::Loewner(poly) => {
            let (e, scale) = poly.evaluate_with_scale(xs)?;
            let s = scale.max(1.0);
            let defect = e.hermiticity_defect() / s;
            let (eigenvalues, _) = e.hermitian_part().hermitian_eigen()?;
            Ok((eigenvalues[0] / s, defect))
        }
        Prepared::Identity(terms) => {
            let m = xs[0].rows();
            let mut residual = ComplexMatrix::zeros(m, m);
            let mut abs_sum = 0.0;
            for (w, p) in terms {
                let (e, scale) = p.evaluate_with_scale(xs)?;
                residual = residual.add(&e.scaled(Complex64::new(*w, 0.0)));
                abs_sum += w.abs() * scale;
            }
            let s = abs_sum.max(1.0);
            Ok((-(residual.fro_norm() / s), 0.0))
        }
    }
}

#[derive(Clone, Copy)]
struct Acc {
    min_margin: f64,
    max_defect: f64,
    failures: u64,
    first_violation: Option<u64>,
}

impl Acc {
    const IDENTITY: Acc = Acc {
        min_margin: f64::INFINITY,
        max_defect: f64::NEG_INFINITY,
        failures: 0,
        first_violation: None,
    };

    fn merge(a: Acc, b: Acc) -> Acc {
        Acc {
            // total_cmp keeps the reduction deterministic for every input,
            // signed zeros included
            min_margin: if b.min_margin.total_cmp(&a.min_margin).is_lt() {
                b.min_margin
            } else {
                a.min_margin
            },
            max_defect: if b.max_defect.total_cmp(&a.max_defect).is_gt() {
                b.max_defect
            } else {
                a.max_defect
            },
            failures: a.failures + b.failures,
            first_violation: match (a.first_violation, b.first_violation) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            },
        }
    }
}

/// Runs a spec: `opts.trials` independent seeded trials, in parallel, with a
/// deterministic report. A violating trial is one whose normalized margin
/// falls below `-opts.tol` or whose symmetry defect exceeds
/// [`DEFAULT_PSD_TOL`]; the lowest-index violation is kept as the
/// counterexample and its inputs are re-derived from the seed.
pub fn run_spec(spec: &InequalitySpec, opts: &RunOptions) -> Result<VerificationReport> {
    if opts.trials == 0 {
        return Err(Error::invalid("run options", "at least one trial required"));
    }
    if !(opts.tol.is_finite() && opts.tol > 0.0) {
        return Err(Error::invalid("run options", "tolerance must be positive"));
    }
    let degree = spec.degree()?;
    let arity = spec.arity()?;
    let dim = match spec.payload {
        Payload::Scalar(_) => degree,
        _ => spec.sampler.fixed_dim.unwrap_or(opts.dim),
    };
    if dim == 0 {
        return Err(Error::invalid("run options", "dimension must be at least 1"));
    }
    let prepared = prepare(spec)?;
    let ensemble = spec.sampler.ensemble;
    let tol = opts.tol;
    let seed = opts.seed;

    let acc = (0..opts.trials)
        .into_par_iter()
        .map(|trial| -> Result<Acc> {
            let xs = sample_inputs(ensemble, arity, dim, seed, trial);
            let (margin, defect) = trial_statistic(&prepared, &xs)?;
            let violated = margin < -tol || defect > DEFAULT_PSD_TOL;
            Ok(Acc {
                min_margin: margin,
                max_defect: defect,
                failures: violated as u64,
                first_violation: violated.then_some(trial),
            })
        })
        .try_reduce(|| Acc::IDENTITY, |a, b| Ok(Acc::merge(a, b)))?;

    let counterexample = match acc.first_violation {
        Some(trial) => {
            let xs = sample_inputs(ensemble, arity, dim, seed, trial);
            let (margin, _) = trial_statistic(&prepared, &xs)?;
            Some(Counterexample {
                trial,
                matrices: xs,
                statistic: margin,
            })
        }
        None => None,
    };
    let status = match (acc.failures > 0, spec.conjecture, spec.kind) {
        (false, false, _) => Status::Pass,
        (false, true, _) => Status::NoCounterexample,
        (true, _, SpecKind::MatrixIdentity) => Status::Fail,
        (true, _, _) => Status::Counterexample,
    };
    Ok(VerificationReport {
        spec: spec.name.clone(),
        kind: spec.kind,
        trials: opts.trials,
        dim,
        seed,
        tolerance: tol,
        min_statistic: acc.min_margin,
        hermiticity_defect_max: acc.max_defect,
        failures: acc.failures,
        status,
        counterexample,
    })
}

/// Regenerates the inputs of one trial and recomputes its normalized margin;
/// bit-identical to what the original run evaluated.
pub fn replay_counterexample(
    spec: &InequalitySpec,
    opts: &RunOptions,
    trial: u64,
) -> Result<(Vec<ComplexMatrix>, f64)> {
    let degree = spec.degree()?;
    let arity = spec.arity()?;
    let dim = match spec.payload {
        Payload::Scalar(_) => degree,
        _ => spec.sampler.fixed_dim.unwrap_or(opts.dim),
    };
    let prepared = prepare(spec)?;
    let xs = sample_inputs(spec.sampler.ensemble, arity, dim, opts.seed, trial);
    let (margin, _) = trial_statistic(&prepared, &xs)?;
    Ok((xs, margin))
}

/// Convenience: asserts `sum_i w_i d_{f_i} >= 0` on unit-trace PSD samples.
pub fn check_scalar(
    terms: Vec<ScalarTerm>,
    trials: u64,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport> {
    let spec = InequalitySpec {
        name: "adhoc/scalar".to_string(),
        kind: SpecKind::ScalarNonneg,
        payload: Payload::Scalar(terms),
        sampler: SamplerConfig {
            ensemble: Ensemble::Psd { trace_one: true },
            fixed_dim: None,
        },
        conjecture: false,
    };
    run_spec(
        &spec,
        &RunOptions {
            trials,
            seed,
            tol,
            ..RunOptions::default()
        },
    )
}

/// Convenience: asserts a trace polynomial is PSD on PSD tuples of
/// dimension `m`.
pub fn check_loewner(
    poly: &TracePolynomial,
    m: usize,
    trials: u64,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport> {
    let spec = InequalitySpec {
        name: "adhoc/loewner".to_string(),
        kind: SpecKind::LoewnerNonneg,
        payload: Payload::Loewner(vec![(1.0, poly.clone())]),
        sampler: SamplerConfig::default(),
        conjecture: false,
    };
    run_spec(
        &spec,
        &RunOptions {
            trials,
            dim: m,
            seed,
            tol,
        },
    )
}

/// Convenience: asserts `sum_i w_i P_i = 0` on unconstrained Ginibre tuples
/// of dimension `m`.
pub fn check_identity(
    terms: Vec<(f64, TracePolynomial)>,
    m: usize,
    trials: u64,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport> {
    let spec = InequalitySpec {
        name: "adhoc/identity".to_string(),
        kind: SpecKind::MatrixIdentity,
        payload: Payload::Identity(terms),
        sampler: SamplerConfig {
            ensemble: Ensemble::Ginibre,
            fixed_dim: None,
        },
        conjecture: false,
    };
    run_spec(
        &spec,
        &RunOptions {
            trials,
            dim: m,
            seed,
            tol,
        },
    )
}
