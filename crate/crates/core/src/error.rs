//! Crate-wide error type.

use thiserror::Error;

/// Failures reported by the library. The CLI maps the variants onto exit
/// codes: preconditions and genericity failures exit 2, schema errors 3,
/// internal invariant breaches 4.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A documented precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A genericity condition of the paper fails; carries the witness.
    #[error("genericity condition {condition} fails: {witness}")]
    Genericity { condition: String, witness: String },
    /// Malformed input data (JSON shape, rational syntax, curve equations).
    #[error("schema error: {0}")]
    Schema(String),
    /// An internal consistency check failed; indicates a bug.
    #[error("internal invariant breached: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn schema(msg: impl Into<String>) -> Self {
        Error::Schema(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// CLI exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Precondition(_) | Error::Genericity { .. } => 2,
            Error::Schema(_) => 3,
            Error::Invariant(_) => 4,
        }
    }
}

/// Returns `Err(Error::Invariant)` when the condition fails.
#[macro_export]
macro_rules! ensure_invariant {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Invariant(format!($($arg)+)));
        }
    };
}
