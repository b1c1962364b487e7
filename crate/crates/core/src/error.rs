// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("objects belong to different number fields")]
    FieldMismatch,
    #[error("invalid defining polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("all generators are zero")]
    ZeroIdeal,
    #[error("generators must be integral")]
    NonIntegral,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("ideal does not divide the dividend")]
    NonDivisible,
    #[error("ideal is not invertible in Z[theta]")]
    NotInvertible,
    #[error("invalid ideal basis: {0}")]
    InvalidIdeal(String),
    #[error("polynomial is not squarefree modulo the prime")]
    SquarefreeViolation,
    #[error("prime ideal belongs to a different field than the advice")]
    AdviceFieldMismatch,
    #[error("advice invariant violated: {0}")]
    AdviceInvariant(String),
    #[error("no prime cofactor found after {0} switches")]
    MaxTrialsExceeded(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("discriminant {0} is not a negative fundamental discriminant")]
    NotFundamental(String),
    #[error("class group of discriminant {0} is not an elementary 2-group")]
    ClassGroupNotElementary2(String),
    #[error("exhaustive grid of {grid} points exceeds budget {budget}")]
    BudgetExceeded { grid: String, budget: u64 },
    #[error("field degree {0} too large for exhaustive enumeration")]
    DegreeTooLarge(usize),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Schema(e.to_string())
    }
}
