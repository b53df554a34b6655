use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected k = {expected}, got k = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("weights are not trace-zero (sum = {0})")]
    NotTraceZero(i64),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("degree mismatch: expected total degree {expected}, got {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    /// A computation contradicted a statement that is supposed to be a theorem
    /// (Kempf's bound, existence of a non-positive χ-basis, ...).
    #[error("theorem contradiction: {0}")]
    TheoremViolation(String),

    /// An internal self-check failed (e.g. a Farkas vector that does not
    /// re-verify). Never expected; reported instead of being masked.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn out_of_range(msg: impl Into<String>) -> Error {
    Error::OutOfRange(msg.into())
}
