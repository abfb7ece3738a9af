use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cell {cell} has non-positive size {value}")]
    NonPositiveSize { cell: usize, value: String },

    #[error("matrix has a negative entry at ({row},{col})")]
    NegativeEntry { row: usize, col: usize },

    #[error("row {row} sums to {sum}, expected n = {n}")]
    RowSum { row: usize, sum: i64, n: i64 },

    #[error("support is not symmetric: S[{i}][{j}] = {s_ij} but S[{j}][{i}] = {s_ji}")]
    SupportAsymmetry { i: usize, j: usize, s_ij: i64, s_ji: i64 },

    #[error("cell sizes undetermined: support graph of the quotient matrix is disconnected")]
    Disconnected,

    #[error("inconsistent size ratios around a cycle through cells {i} and {j}")]
    InconsistentRatios { i: usize, j: usize },

    #[error("level {level} exceeds cube dimension {n}")]
    LevelTooHigh { level: usize, n: usize },

    #[error("cube dimension {n} exceeds the limit {limit} for {what}")]
    DimensionTooLarge { n: usize, limit: usize, what: &'static str },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}
