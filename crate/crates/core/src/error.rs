use thiserror::Error;

/// Errors raised by body construction, geometric queries and the solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid body: {0}")]
    Validation(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("dimension mismatch: body has dimension {expected}, point has {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("mesh too coarse: {0}")]
    MeshTooCoarse(String),

    #[error("solver did not converge after {iterations} iterations (last relative change {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("linear algebra failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Validation(msg.into()))
}
