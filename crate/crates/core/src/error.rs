use thiserror::Error;

/// Errors raised by the optimizer library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum StaError {
    #[error("invalid search space: {0}")]
    InvalidSpace(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("objective returned non-finite value {value} at initial point {point:?}")]
    NonFiniteInitial { point: Vec<f64>, value: f64 },

    #[error("objective returned no finite value over a batch of {0} candidates")]
    NoFiniteCandidate(usize),

    #[error("empty sample batch")]
    EmptyBatch,
}

pub type Result<T, E = StaError> = std::result::Result<T, E>;
