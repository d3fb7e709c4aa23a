use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank: sl_{0} requires n >= 2")]
    InvalidRank(usize),
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight {weight} has {got} coordinates, expected {expected}")]
    WeightLength {
        weight: String,
        got: usize,
        expected: usize,
    },
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("representation of dimension {dim} exceeds the size cap {cap}")]
    SizeCap { dim: usize, cap: usize },
    #[error("zero-weight space of V_({0}) is empty")]
    EmptyZeroWeight(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("index {index} out of range (multiplicity {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("grid {grid} too small for bandwidth {bandwidth}")]
    Bandwidth { grid: usize, bandwidth: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
