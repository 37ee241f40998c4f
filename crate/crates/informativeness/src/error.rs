use thiserror::Error;

/// Errors produced by experiment validation, order checks, audits, and paths.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("experiment exceeds size limit: {states} states x {signals} signals (max 64 x 64)")]
    SizeLimit { states: usize, signals: usize },

    #[error("row {row} sums to {sum}, which is not 1 within tolerance {tol}")]
    RowSum { row: usize, sum: f64, tol: f64 },

    #[error("negative entry {value} at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize, value: f64 },

    #[error("experiments have mismatched state counts: {0} vs {1}")]
    StateMismatch(usize, usize),

    #[error("experiment is not MLRP: 2x2 minor at states ({i}, {i2}), signals ({j}, {j2}) is {minor}")]
    NotMlrp {
        i: usize,
        i2: usize,
        j: usize,
        j2: usize,
        minor: f64,
    },

    #[error("activation condition fails for {kind} at signal {j}, state {l} (margin {margin})")]
    ActivationFailed {
        kind: String,
        j: usize,
        l: usize,
        margin: f64,
    },

    #[error("index out of range: {0}")]
    Index(String),

    #[error("operation requires a binary-signal experiment (m = 2), got m = {0}")]
    NotBinary(usize),

    #[error("invalid prior: {0}")]
    Prior(String),

    #[error("invalid cost specification: {0}")]
    CostSpec(String),

    #[error("numerically ill-conditioned: {0}")]
    IllConditioned(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("iteration cap exceeded: {0}")]
    IterationCap(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown reproduction case: {0}")]
    UnknownCase(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
