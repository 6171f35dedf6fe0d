use thiserror::Error;

/// Errors raised by the algebra, Gröbner and construction layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different polynomial rings")]
    RingMismatch,

    #[error("fields differ: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("ring must have between 1 and {max} variables, got {got}")]
    BadVariableCount { got: usize, max: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("computation exceeded the degree cap of {cap}")]
    DegreeCapExceeded { cap: u32 },

    #[error("ideal is not artinian")]
    NotArtinian,

    #[error("no generators")]
    NoGenerators,

    #[error("precondition: {0}")]
    Precondition(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("generic choice failed after {attempts} attempts: {what}")]
    GenericityFailure { what: String, attempts: usize },

    #[error("gin could not be certified: {0}")]
    GinUncertified(String),

    #[error("linkage check failed: {0}")]
    Linkage(String),

    #[error("recipe error at line {line}: {message}")]
    Recipe { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
