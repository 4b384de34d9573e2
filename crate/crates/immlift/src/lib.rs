//! Immanants, generalized matrix functions of positive semidefinite matrices,
//! and their matrix-valued trace-polynomial lifts.
//!
//! A generalized matrix function attaches a scalar to an n×n matrix via a
//! weight function `f` on (a subgroup of) the symmetric group:
//!
//! ```text
//! d_f(A) = Σ_σ f(σ) · a_{1σ(1)} a_{2σ(2)} ⋯ a_{nσ(n)}
//! ```
//!
//! With `f = sign` this is the determinant, with `f ≡ 1` the permanent, and
//! with `f = χ_λ` an irreducible symmetric-group character it is the immanant.
//! For positive semidefinite `A` and suitable `f` these values are
//! nonnegative, and each scalar inequality of that shape lifts to a
//! matrix-valued trace-polynomial inequality in the Löwner order. This crate
//! computes the scalar functions, performs the symbolic lift, and verifies
//! both levels numerically against seeded random ensembles:
//!
//! * [`perm`] — permutations of `{1..n}`, canonical cycle decompositions,
//!   subgroup generation and conjugacy classes;
//! * [`partition`], [`characters`] — integer partitions, exact
//!   symmetric-group characters, group functions, central idempotents;
//! * [`matrix`] — dense complex matrices, a self-contained Hermitian
//!   eigensolver, PSD tests, Gram vectors, permutation operators on tensor
//!   space, seeded random ensembles;
//! * [`gmf`] — determinant, permanent, immanants, generalized matrix
//!   functions, and a brute-force tensor-space oracle;
//! * [`tracepoly`] — symbolic trace polynomials and the scalar→matrix lift;
//! * [`verifier`], [`suites`] — randomized inequality verification with
//!   deterministic, machine-readable reports.

pub mod characters;
pub mod error;
pub mod gmf;
pub mod matrix;
pub mod partition;
pub mod perm;
pub mod suites;
pub mod tracepoly;
pub mod verifier;

pub use num_complex::Complex64;

pub use characters::{
    builtin_a4_table, convolve, idempotent_function, mn_character, CharacterTable, GroupFunction,
};
pub use error::{Error, Result};
pub use gmf::{determinant, gmf_tensor_oracle, gmf_value, immanant, permanent};
pub use matrix::{
    derive_seed, permutation_operator, random_ginibre, random_psd, random_unit_vector,
    ComplexMatrix, GramDecomposition, PsdCheck,
};
pub use partition::{partitions_of, Partition};
pub use perm::{enumerate_symmetric, CanonicalCycles, ConjugacyClass, Permutation, Subgroup};
pub use suites::{builtin_suite, perm_dominance_specs, suite_names};
pub use tracepoly::{evaluate_t_scalar, lift_function, lift_sigma, TracePolynomial, TraceTerm};
pub use verifier::{
    check_identity, check_loewner, check_scalar, replay_counterexample, run_spec, Counterexample,
    Ensemble, InequalitySpec, Payload, RunOptions, SamplerConfig, ScalarTerm, SpecKind, Status,
    VerificationReport,
};

/// Largest symmetric-group degree supported by full-group enumeration (8! = 40320).
pub const MAX_DEGREE: usize = 8;
