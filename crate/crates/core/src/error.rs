use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol registry mismatch")]
    RegistryMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("symbol {name} is already registered with kind {existing}")]
    SymbolKindConflict { name: String, existing: String },
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("series must have zero constant term")]
    NonzeroConstantTerm,
    #[error("series must have constant term one")]
    ConstantTermNotOne,
    #[error("series is not a Lie element: nonzero residual at {0}")]
    NotLie(String),
    #[error("series is not group-like: shuffle relation fails for ({0}, {1})")]
    NotGroupLike(String, String),
    #[error("identity does not hold: {0}")]
    Mismatch(String),
    #[error("unsupported denominator prime {0}")]
    UnsupportedPrime(u64),
    #[error("argument outside the convergence domain: {0}")]
    Domain(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
