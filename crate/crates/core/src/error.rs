use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("operators do not commute")]
    NonCommuting,
    #[error("operator is not split semisimple over this field; enlarge the field")]
    EnlargeField,
    #[error("weight seed is not generic: {0}")]
    NonGeneric(String),
    #[error("level overflow: {0}")]
    LevelOverflow(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("incompatible p-characters: {0}")]
    PCharacter(String),
    #[error("module is not graded: {0}")]
    Ungraded(String),
    #[error("unexpected dimension: {0}")]
    UnexpectedDimension(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
