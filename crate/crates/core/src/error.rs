use thiserror::Error;

/// Errors raised by the reconstruction-system operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A matrix or vector does not have the shape the operation expects.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Two systems were expected to share a signature `(m, k, d)`.
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: String, right: String },

    /// The frame operator is not positive invertible.
    #[error("not a reconstruction system: smallest eigenvalue {lambda_min:e} is below the tolerance {tolerance:e}")]
    NotAnRs { lambda_min: f64, tolerance: f64 },

    /// A numerical precondition (projectivity, injectivity, ...) failed.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Invalid index set or parameter value.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Non-finite entry found while building a matrix.
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
