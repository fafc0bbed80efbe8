use thiserror::Error;

pub type Result<T, E = SeriationError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum SeriationError {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("invalid matrix shape: {0}")]
    Shape(String),
    #[error("self-pair query on item {0}")]
    SelfPair(usize),
    #[error("coincident items in comparison: ({k}, {l}, {r})")]
    CoincidentItems { k: usize, l: usize, r: usize },
    #[error("item {item} out of range for n = {n}")]
    ItemOutOfRange { item: usize, n: usize },
    #[error("degenerate budget: {0}")]
    DegenerateBudget(String),
    #[error("instance too large for exhaustive search: n = {n}, limit = {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("scenario generation failed: {0}")]
    Generation(String),
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
