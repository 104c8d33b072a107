use thiserror::Error;

/// Errors raised by the exact moment machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation needed more moments than were supplied.
    #[error("need moments up to index {needed}, but only {available} are available")]
    Arity { needed: usize, available: usize },

    /// A value lies outside the set an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// A linear system had no unique solution.
    #[error("matrix is singular")]
    Singular,

    /// An overdetermined system had no solution.
    #[error("overdetermined system is inconsistent at equation {equation}")]
    Inconsistent { equation: usize },

    /// The caller broke a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal invariant failed; this indicates a bug rather than bad input.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    /// An explicit grid was queried past its last listed point.
    #[error("explicit grid exhausted: no listed point at or beyond {0}")]
    GridExhausted(String),

    /// Degree exceeds the configured soft limit.
    #[error("moment count {n} exceeds the configured limit {limit}")]
    LimitExceeded { n: usize, limit: usize },

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
