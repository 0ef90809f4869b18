use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group of order {order} exceeds the order cap {cap}")]
    SizeCap { order: usize, cap: usize },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("search window exceeded: {0}")]
    Window(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown constructor `{0}`")]
    UnknownConstructor(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
