//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("granule {granule} is outside the domain of chronology `{unit}`")]
    OutOfDomain { unit: String, granule: i64 },

    #[error("unknown label `{label}` in chronology `{unit}`")]
    UnknownLabel { unit: String, label: String },

    #[error("unknown chronology `{0}`")]
    UnknownUnit(String),

    #[error("chronology mismatch: expected `{expected}`, got `{actual}`")]
    ChronologyMismatch { expected: String, actual: String },

    #[error("no conversion path from `{from}` to `{to}`")]
    NoConversionPath { from: String, to: String },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("contradiction: {0}")]
    Contradiction(String),

    #[error("denotation is not contiguous: not an interval")]
    NotAnInterval,

    #[error("operation requires a bounded interval")]
    UnboundedInterval,

    #[error("invalid calendar: {0}")]
    InvalidCalendar(String),
}
