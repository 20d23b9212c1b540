use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid coordinate name `{0}`")]
    InvalidCoordinate(String),

    #[error("duplicate coordinate `{0}` in chart")]
    DuplicateCoordinate(String),

    #[error("no value assigned to coordinate `{0}`")]
    MissingAssignment(String),

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("expression in {entry} uses a coordinate outside the chart")]
    ForeignCoordinate { entry: String },

    #[error("operand mismatch: {0}")]
    Mismatch(String),

    #[error("expected an element of degree {expected}, found {found}")]
    Degree { expected: String, found: String },

    #[error("{0} is not verified")]
    Unverified(String),

    #[error("reconstruction rejected by probe {probe}: residual {residual}")]
    Rejected { probe: String, residual: String },
}
