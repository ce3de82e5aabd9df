use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("unknown index `{0}`")]
    UnknownIndex(String),

    #[error("element {ordinal} out of range for index `{index}` of size {size}")]
    OutOfRange {
        index: String,
        ordinal: usize,
        size: usize,
    },

    #[error("`{value}` is not an element of {obj}")]
    NotAnElement { value: String, obj: String },

    #[error("type mismatch in `{term}`: expected {expected}, found {found}")]
    TypeMismatch {
        term: String,
        expected: String,
        found: String,
    },

    #[error("codomain {0} is not of the form Y + exc")]
    NotExceptionSum(String),

    #[error("{0} has no dual")]
    NotDualizable(&'static str),

    #[error("indices must be distinct, got `{0}` twice")]
    SameIndex(String),

    #[error("{obj} has more than {limit} elements")]
    TooLarge { obj: String, limit: usize },

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}
