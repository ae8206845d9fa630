//! Crate-wide error type.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A numeric argument violated its domain (sign, range, finiteness).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A group weight layout that cannot define a valid objective.
    #[error("invalid group pattern: {0}")]
    InvalidPattern(String),

    /// Two signals that must have equal length do not.
    #[error("length mismatch: expected {expected} samples, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    /// NaN or infinity where a finite sample is required.
    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },

    /// An operation that needs at least one sample received none.
    #[error("empty input")]
    EmptyInput,

    /// Signal shorter than the operation can meaningfully process.
    #[error("signal too short: {len} samples, need at least {min}")]
    SignalTooShort { len: usize, min: usize },

    /// (periods, ones-per-period) outside the built-in multiplier table.
    #[error("(m, n1) = ({m}, {n1}) has no tabulated multiplier; supply lambda explicitly")]
    OutOfTable { m: usize, n1: usize },

    /// Ground-truth intervals that are unsorted, overlapping, or out of range.
    #[error("invalid labels: {0}")]
    InvalidLabels(String),

    /// Text input that is not a sample value.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Neither a file header nor an override provided the sampling rate.
    #[error("missing sample rate: no `# fs=` header and no override given")]
    MissingSampleRate,

    /// A JSON artifact written by an incompatible version of the tool.
    #[error("unsupported schema version {found}, expected {expected}")]
    SchemaVersion { found: u32, expected: u32 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
