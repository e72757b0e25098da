use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("rings differ: {0}")]
    RingMismatch(String),

    #[error("bracket of fields {0} and {1} is not in the span of the basis")]
    NotClosed(usize, usize),

    #[error("structural error: {0}")]
    Structure(String),

    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("groebner budget exhausted: {0}")]
    Budget(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
