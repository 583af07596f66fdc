use thiserror::Error;

/// Errors shared across the workbench modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unsupported dimension m = {m}: the quadric ring is defined for m >= 3")]
    UnsupportedDimension { m: i64 },

    #[error("classes belong to different rings (m = {left} vs m = {right})")]
    RingMismatch { left: usize, right: usize },

    #[error("certification failed for m = {m} at degree bound {bound}: {uncertified} product(s) without a membership witness")]
    BoundExceeded {
        m: usize,
        bound: usize,
        uncertified: usize,
    },

    #[error("elimination blocked: symbol `{symbol}` has no invertible coefficient in any remaining equation")]
    EliminationBlocked { symbol: String },

    #[error("division impossible in the Laurent ring: {0}")]
    DivisionImpossible(String),

    #[error("certificate rejected: {0}")]
    CertificateInvalid(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
