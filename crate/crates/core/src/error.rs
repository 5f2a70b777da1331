use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("matrix must be square with size >= 2, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("permanent of order {n} exceeds the exhaustive bound {bound}")]
    PermanentTooLarge { n: usize, bound: usize },

    #[error("ragged minor selection: {rows} rows vs {cols} columns")]
    RaggedSelection { rows: usize, cols: usize },

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("duplicate index {0} in selection")]
    DuplicateIndex(usize),

    #[error("expansion column {0} is not part of the selection")]
    ExpansionColumnNotSelected(usize),

    #[error("diagonal conjugation needs {expected} entries with the last one zero")]
    BadConjugation { expected: usize },

    #[error("edge length {0} is not positive")]
    NonPositiveLength(String),

    #[error("cant parameter must satisfy 0 < a < {bound}, got a = {a}")]
    InvalidCant { a: String, bound: String },

    #[error("dimension {d} is below the minimum {min}")]
    DimensionTooSmall { d: usize, min: usize },

    #[error("dimension {d} exceeds the configured bound {bound}")]
    DimensionOverBound { d: usize, bound: usize },

    #[error("operation requires d = {expected}, got {d}")]
    WrongDimension { d: usize, expected: usize },

    #[error("matrix is not normal idempotent")]
    NotNormalIdempotent,

    #[error("matrix has a non-finite entry at ({0}, {1})")]
    NonFiniteEntry(usize, usize),

    #[error("diagonal entry ({0}, {0}) is not zero")]
    NonZeroDiagonal(usize),

    #[error("invalid perturbation matrix: {0}")]
    InvalidPerturbation(String),

    #[error("decomposition failed: {0}")]
    Decomposition(String),

    #[error("inconsistent bounds on constraint {0}: lower > upper")]
    InconsistentBounds(String),

    #[error("polytope is empty")]
    EmptyPolytope,

    #[error("invalid vertex label: {0}")]
    InvalidLabel(String),

    #[error("invalid face interval: {0}")]
    InvalidFace(String),

    #[error("invalid dimension range: {0}")]
    InvalidRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("+inf entries are not supported")]
    PositiveInfinity,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
