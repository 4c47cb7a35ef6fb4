use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("rank {0} is not supported (maximum 4)")]
    RankTooLarge(usize),
    #[error("zero vector has no primitive generator")]
    ZeroVector,
    #[error("polyhedra have different tail cones")]
    TailMismatch,
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("reducible polynomial {poly}: divisible by {factor}")]
    Reducible { poly: String, factor: String },
    #[error("irreducibility undecidable: {0}")]
    Undecidable(String),
    #[error("weight {0} lies outside the weight cone")]
    OutsideWeightCone(String),
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("family is not coherent: {0}")]
    Incoherent(String),
    #[error("not a Demazure root: {0}")]
    NotARoot(String),
    #[error("descent to k(t) failed: {0}")]
    Descent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
