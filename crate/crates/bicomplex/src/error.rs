use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Matrix shapes incompatible with the requested operation.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// A subquotient construction whose containment precondition fails.
    #[error("invalid subquotient: {0}")]
    InvalidSubquotient(String),
    /// Inputs outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A mathematically impossible intermediate result; signals an invalid
    /// complex or an internal bug rather than a user mistake.
    #[error("integrity error: {0}")]
    Integrity(String),
    /// Structure equations whose extension does not square to zero.
    #[error("non-integrable structure: d^2 != 0 on generator {generator}")]
    NonIntegrable { generator: String },
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
