use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element is not bar-antisymmetric: {0}")]
    NotAntisymmetric(String),
    #[error("no exact quotient: {0}")]
    NotDivisible(String),
    #[error("row and column totals differ ({rows} vs {cols})")]
    MarginMismatch { rows: u64, cols: u64 },
    #[error("illegal move {0}")]
    IllegalMove(String),
    #[error("{0} is not below {1}")]
    NotComparable(String, String),
    #[error("bar matrix is not unitriangular: {0}")]
    TriangularityViolation(String),
    #[error("lower coefficient is not bar-symmetric: {0}")]
    NonSymmetricCoefficient(String),
    #[error("element leaves the cell: {0}")]
    OutOfCell(String),
    #[error("operator is not nilpotent within {0} steps")]
    NotNilpotent(usize),
    #[error("root index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("corrupt cache entry {0}")]
    CacheCorrupt(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
