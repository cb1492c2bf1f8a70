use thiserror::Error;

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by clustering-comparison operations.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The requested index has no defined value for this input, e.g. the
    /// adjusted Rand index when both clusterings consist of a single cluster.
    #[error("index undefined: {0}")]
    UndefinedIndex(String),
    /// An enumeration or construction would exceed the configured budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    /// Internal invariant violation; indicates corrupted state or a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
}
