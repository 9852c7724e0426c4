use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precision exhausted")]
    PrecisionExhausted,
    #[error("census of {requested} polynomials exceeds the cap of {cap}")]
    CensusCapExceeded { requested: u128, cap: u128 },
    #[error("root is not simple modulo the uniformizer")]
    NotSimpleRoot,
    #[error("bound is infeasible for n = {n}, q = {q}")]
    InfeasibleBound { n: u32, q: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
