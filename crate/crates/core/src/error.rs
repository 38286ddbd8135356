use thiserror::Error;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("characteristic mismatch: {left} vs {right}")]
    CharacteristicMismatch { left: u64, right: u64 },
    #[error("monomial order mismatch: {left} vs {right}")]
    OrderMismatch { left: String, right: String },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} does not fit in 63 bits")]
    CharacteristicTooLarge(u64),
    #[error("polynomial `{0}` is not homogeneous for the declared grading")]
    NonHomogeneous(String),
    #[error("zero ring: the defining ideal contains 1")]
    ZeroRing,
    #[error("generator `{0}` is not a monomial")]
    NotMonomial(String),
    #[error("operation requires a polynomial ring (zero defining ideal)")]
    NonzeroDefiningIdeal,
    #[error("missing assumption: {0}")]
    MissingAssumption(String),
    #[error("ideal is not contained in the ambient ideal: {0}")]
    NotContained(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("computation exceeded its budget: {0}")]
    BudgetExceeded(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
