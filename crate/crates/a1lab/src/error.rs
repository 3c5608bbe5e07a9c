use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("polynomial is not homogeneous")]
    NonHomogeneous,

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("point does not lie on the variety")]
    NotOnVariety,

    #[error("point lies on the boundary divisor")]
    PointOnBoundary,

    #[error("coefficient denominator not invertible mod {p}")]
    Reduction { p: u64 },

    #[error("enumeration too large: {points} points exceeds cap {cap}; use sampling mode")]
    TooLarge { points: u128, cap: u128 },

    #[error("retry budget exhausted: {0}")]
    RetryExhausted(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("construction error: {0}")]
    Construction(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
