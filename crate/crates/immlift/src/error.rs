//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("degree {0} outside supported range 1..=8")]
    DegreeOutOfRange(usize),

    #[error("matrix must be square (got {rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("matrix not Hermitian within tolerance: defect {defect:.3e} exceeds {bound:.3e}")]
    NotHermitian { defect: f64, bound: f64 },

    #[error("matrix not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPsd { min_eigenvalue: f64 },

    #[error("tensor dimension {dim} exceeds cap {cap}")]
    TensorDimCap { dim: usize, cap: usize },

    #[error("function domain is not the full symmetric group of degree {0}")]
    DomainNotSymmetric(usize),

    #[error("domain mismatch between group functions")]
    DomainMismatch,

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("invalid {what}: {why}")]
    Invalid { what: &'static str, why: String },
}

impl Error {
    pub fn invalid(what: &'static str, why: impl Into<String>) -> Self {
        Error::Invalid { what, why: why.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
