//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Arithmetic left undefined by the extended-real conventions,
    /// e.g. `(+inf) + (-inf)`.
    #[error("undefined extended-real arithmetic: {0}")]
    UndefinedArithmetic(&'static str),

    /// Operands live in products of different dimension.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Malformed textual input. `line` and `column` are 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A rectangle whose lower corner does not lie strictly below its
    /// upper corner, or with an infinite endpoint of the wrong sign.
    #[error("invalid rectangle: {0}")]
    InvalidRectangle(String),

    /// A matching refers to a bar index outside its barcode.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// Input exceeds the guard for exhaustive enumeration.
    #[error("barcode too large for exhaustive enumeration: {size} bars per side (limit {limit})")]
    TooLarge { size: usize, limit: usize },
}
