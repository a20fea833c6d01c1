use thiserror::Error;

/// Failure modes shared by every module of the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero or by a zero divisor")]
    ZeroDivisor,
    #[error("parameter hits the pole at 1: {0}")]
    PoleAtOne(String),
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),
    #[error("{0} is not coprime to {1}")]
    NotCoprime(i64, i64),
    #[error("argument outside the domain of convergence: {0}")]
    OutOfDomain(String),
    #[error("p-adic precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("m + 1 = {0} is not divisible by p - 1 = {1}")]
    CongruenceViolation(i64, i64),
    #[error("character is not primitive (conductor {conductor}, modulus {modulus})")]
    NonPrimitive { conductor: u64, modulus: u64 },
    #[error("modulus k = {0} is even; no real k-th root of -1")]
    EvenModulus(i64),
    #[error("tolerance {0} not reached within {1} terms")]
    ToleranceUnreachable(f64, usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn pole(what: impl Into<String>) -> Self {
        Error::PoleAtOne(what.into())
    }

    pub(crate) fn invalid(what: impl Into<String>) -> Self {
        Error::InvalidArgument(what.into())
    }
}
