use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("composition of differentials is not zero")]
    CompositionNotZero,
    #[error("morphisms are not composable: {0}")]
    ObjectMismatch(String),
    #[error("presentation is not semi-free")]
    NotSemiFree,
    #[error("invalid presentation: {0}")]
    Validation(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("identity violated: {0}")]
    IdentityViolated(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
