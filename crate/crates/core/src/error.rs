use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index {0} is not exchangeable")]
    NotExchangeable(usize),
    #[error("incompatible pair: {0}")]
    Incompatible(String),
    #[error("not invertible over the integers: {0}")]
    NotUnimodular(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("prime sequence: {0}")]
    Primes(String),
    #[error("linear system: {0}")]
    LinearSystem(String),
    #[error("word: {0}")]
    Word(String),
    #[error("check failed: {0}")]
    Check(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
