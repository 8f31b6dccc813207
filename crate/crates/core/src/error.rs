use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown Cartan type {0:?}")]
    UnknownType(String),
    #[error("word is not a reduced expression of the longest element: {0}")]
    NotReduced(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("weight mismatch")]
    WeightMismatch,
    #[error("value outside the integral form: {0}")]
    NotIntegral(String),
    #[error("element is not fixed by the diagram automorphism")]
    NotFixed,
    #[error("sign mismatch: {0}")]
    SignMismatch(String),
    #[error("braid operator convention check failed: {0}")]
    Convention(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
