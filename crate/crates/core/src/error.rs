use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("algebra mismatch: expected {expected}, found {found}")]
    AlgebraMismatch { expected: String, found: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("composition error: {0}")]
    Composition(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("matrix is singular")]
    Singular,
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("schema error: missing or invalid field `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
