use thiserror::Error;

/// Errors raised by the algebraic kernels and the file readers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("map is not invertible")]
    NotInvertible,
    #[error("not a differential: {0}")]
    NotADifferential(String),
    #[error("not a deformation retract: {0}")]
    NotARetract(String),
    #[error("not a dg-algebra: {0}")]
    NotADgAlgebra(String),
    #[error("retract does not match the algebra: {0}")]
    RetractMismatch(String),
    #[error("the formal symbol lambda_1 cannot be applied to elements")]
    FormalSymbolApplied,
    #[error("map does not decrease weight: {0}")]
    NotWeightDecreasing(String),
    #[error("map does not fix the unit of the tensor coalgebra")]
    UnitViolation,
    #[error("parse error at {location}: {message}")]
    ParseError { location: String, message: String },
    #[error("{0}")]
    SemanticError(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::ParseError {
            location: location.into(),
            message: message.into(),
        }
    }
}
