use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown ring tag `{0}`")]
    UnknownRing(String),

    #[error("invalid label {label} for ring {ring}")]
    InvalidLabel { ring: String, label: String },

    #[error("matrix coefficient index ({row},{col}) out of range for irrep {label} of dimension {dim}")]
    IndexOutOfRange {
        label: String,
        row: u32,
        col: u32,
        dim: u64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("elements belong to different algebras: {0} vs {1}")]
    MixedAlgebras(String, String),

    #[error("mixed scalar modes")]
    MixedModes,

    #[error("scalar mode {mode} is not available for {ring}")]
    UnsupportedMode { ring: String, mode: String },

    #[error("operation requires a finite provider, got {0}")]
    NotFinite(String),

    #[error("non-finite matrix entry")]
    NonFinite,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
