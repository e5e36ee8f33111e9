use thiserror::Error;

/// Errors raised across the library.
///
/// Budget exhaustion is kept apart from the domain errors so callers can
/// distinguish "the answer is no" from "we gave up".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("variable table mismatch")]
    TableMismatch,
    #[error("no image for variable {0}")]
    MissingImage(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("level mismatch: {0}")]
    LevelMismatch(String),
    #[error("point is not on the variety: generator {0} evaluates to {1}")]
    NotOnVariety(usize, String),
    #[error("the unit ideal has no dimension")]
    UnitIdeal,
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid arc: {0}")]
    InvalidArc(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("computation budget exhausted: {0}")]
    Budget(String),
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
