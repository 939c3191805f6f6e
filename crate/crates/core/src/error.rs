use thiserror::Error;

/// Errors produced by the library's checked entry points.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("smoothness vector is empty")]
    EmptyProfile,
    #[error("smoothness entry R[{index}] = {value} must be positive and finite")]
    InvalidExponent { index: usize, value: f64 },
    #[error("cannot parse smoothness vector {input:?}: {reason}")]
    ParseProfile { input: String, reason: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("budget {0} must be nonnegative and finite")]
    InvalidBudget(f64),
    #[error("empty or reversed window ({lo}, {hi}]")]
    InvalidWindow { lo: f64, hi: f64 },
    #[error("index n must be at least {min}, got {got}")]
    IndexTooSmall { min: u64, got: String },
    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("oracle box too small; minimal sufficient box is {suggested:?}")]
    InsufficientBox { suggested: Vec<u64> },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
