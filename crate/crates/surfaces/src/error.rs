use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("malformed rotation system: {0}")]
    Rotation(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is acyclic, girth is infinite")]
    Acyclic,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("operation not applicable: {0}")]
    Surgery(String),

    #[error("no completion found within search bound: {0}")]
    NoCompletion(String),

    #[error("construction unsupported: {0}")]
    Unsupported(String),

    #[error("search budget exceeded")]
    BudgetExceeded,

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("catalog or cache data corrupt: {0}")]
    DataCorruption(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn rotation(msg: impl Into<String>) -> Self {
        Error::Rotation(msg.into())
    }

    pub fn surgery(msg: impl Into<String>) -> Self {
        Error::Surgery(msg.into())
    }
}
