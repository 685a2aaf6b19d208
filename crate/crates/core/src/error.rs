use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not an M-matrix: {0}")]
    NotMMatrix(String),

    #[error("configuration {0} is not effective")]
    NotEffective(String),

    #[error("enumeration of {count} classes exceeds the cap of {cap}")]
    CapExceeded { count: BigInt, cap: u64 },

    #[error("site index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("vector {0} is not in R+")]
    NotInRPlus(String),

    #[error("configuration {0} is not in S+")]
    NotInSPlus(String),

    #[error("site {site} is not ready to fire at {at}")]
    NotReady { site: usize, at: String },

    #[error("{0} is not a superstable configuration of M")]
    NotSuperstable(String),

    #[error("{0} is not a superstable preimage of the pair")]
    NotSuperstablePreimage(String),

    #[error("{0} is not a critical preimage of the pair")]
    NotCriticalPreimage(String),

    #[error("graph error: {0}")]
    Graph(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("all entries are zero")]
    AllZero,

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
