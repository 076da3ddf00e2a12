use thiserror::Error;

/// Errors raised by the exact-arithmetic and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("structure error: {0}")]
    Structure(String),

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("{what} at n = {n} exceeds the configured bound {max}")]
    ResourceLimit { what: &'static str, n: usize, max: usize },

    #[error("unsupported unit: {0}")]
    UnsupportedUnit(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("weight conflict: {0}")]
    WeightConflict(String),

    #[error("missing weight: {0}")]
    MissingWeight(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
