use thiserror::Error;

/// Errors raised by the representation and realization builders.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid deformation parameter: {0}")]
    InvalidQ(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    /// A square root in the orthonormal / Holstein-Primakoff coefficients
    /// hit a negative or non-real argument.
    #[error("square-root argument {value} is not a nonnegative real ({context})")]
    UnitarityDomain { value: String, context: String },

    #[error("operators live on different bases")]
    BasisMismatch,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
