use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {0}: the rank must be at least 1")]
    InvalidRank(usize),

    #[error("index {index} out of range 1..={max}")]
    InvalidIndex { index: usize, max: usize },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource limit: n = {n} exceeds the enumeration ceiling n <= {ceiling}")]
    ResourceLimit { n: usize, ceiling: usize },

    #[error("rank {rank} exceeds the ceiling r <= {ceiling} for this suite")]
    RankCeiling { rank: usize, ceiling: usize },

    #[error("audit failure: {0}")]
    Audit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
