use std::fmt;

/// A syntax error in the word grammar, with a 1-based column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(column: usize, message: impl Into<String>) -> Self {
        ParseError { column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("Baumslag-Solitar parameters must be nonzero (got m = {m}, n = {n})")]
    ZeroParameter { m: i64, n: i64 },
    #[error("parameter magnitude {0} exceeds the supported range")]
    ParameterTooLarge(i64),
    #[error("syntax error at {0}")]
    Parse(#[from] ParseError),
    #[error("{0} is not a prime")]
    NotPrime(i64),
    #[error("modulus must be at least 2 (got {0})")]
    ModulusTooSmall(i64),
    #[error("{what} must be at least {min} (got {got})")]
    TooSmall { what: &'static str, min: i64, got: i64 },
    #[error("generator index {index} is out of range for {count} generators")]
    UnknownGenerator { index: usize, count: usize },
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("lattices belong to different presentations")]
    MismatchedPresentation,
}

pub type Result<T> = std::result::Result<T, Error>;
