use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("sequence is not weakly decreasing: {0}")]
    NotSorted(String),
    #[error("empty subset has no attached partition")]
    EmptySubset,
    #[error("negative entry where a non-negative value is required: {0}")]
    NegativeEntry(String),
    #[error("monomial expansion exceeds the configured bound of {0} terms")]
    ResourceLimit(usize),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("LP size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
