use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero form or polynomial is not allowed here")]
    ZeroInput,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("wrong variable role: expected {expected}, got {got}")]
    WrongRole { expected: &'static str, got: &'static str },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("form is a pure power (rank 1); suggested generators ({g}, {gprime})")]
    RankOne { g: String, gprime: String },
    #[error("generators are not coprime")]
    NotCoprime,
    #[error("solution space has dimension {0}, expected 1")]
    SolutionDimension(usize),
    #[error("basis is linearly dependent")]
    DependentBasis,
    #[error("partition total {total} does not match degree {degree}")]
    PartitionMismatch { total: u32, degree: u32 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("not covered: {0}")]
    NotCovered(String),
    #[error("no certified witness available")]
    NoWitness,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
