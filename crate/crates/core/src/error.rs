use thiserror::Error;

/// Errors surfaced by the exact, asymptotic and Monte-Carlo engines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("enumeration cap exceeded: {what} requires {requested}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partitions are not comparable in the refinement order")]
    NotComparable,

    #[error("combinatorial map is disconnected")]
    Disconnected,

    #[error("invalid marginal word: {0}")]
    InvalidWord(String),

    #[error("dimension profile mismatch: {0}")]
    DimensionMismatch(String),

    #[error("asymptotic regime mismatch: {0}")]
    RegimeMismatch(String),

    #[error("memory cap exceeded: tensor would hold {requested} entries, cap is {cap}")]
    MemoryCap { requested: usize, cap: usize },
}
