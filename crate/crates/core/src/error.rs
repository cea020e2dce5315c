use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Unsupported type label, rank out of range, or bad campaign settings.
    #[error("configuration error: {0}")]
    Config(String),

    /// A mathematical precondition on an input failed (e.g. a non-regular shift).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("index {index} out of range (len {len})")]
    Index { index: usize, len: usize },

    /// An internal identity failed to hold; indicates a construction bug.
    #[error("construction check failed: {0}")]
    Construction(String),

    #[error("solver failure: {0}")]
    Solver(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}
