//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by matrix routines, channel constructors and circuit
/// execution.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semi-definite (eigenvalue {0:.3e})")]
    NotPsd(f64),

    #[error("columns are not orthonormal (deviation {0:.3e})")]
    NotIsometry(f64),

    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("not a density matrix: {0}")]
    NotDensity(String),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown method: {0}")]
    UnknownMethod(String),

    #[error("post-selection probability is numerically zero")]
    ZeroProbability,

    #[error("no threshold crossing found: {0}")]
    NoCrossing(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
