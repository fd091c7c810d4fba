use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("unsupported dimension d = {0} for this operation")]
    UnsupportedDimension(usize),

    #[error("shift is not aligned with the sampling lattice: {0}")]
    UnalignedShift(String),

    #[error("signal has no closed-form generator; dilation needs one")]
    NoGenerator,

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("exponents outside the admissible region: {0}")]
    Inadmissible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("zero signal")]
    ZeroSignal,

    #[error("power iteration did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("kernel error: {0}")]
    Kernel(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
