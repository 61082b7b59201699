use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("not a Maurer-Cartan element: {0}")]
    NotMaurerCartan(String),
    #[error("fixed-point iteration did not stabilize within {0} steps")]
    NotConverged(usize),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Input problems (exit 2) versus mathematical failures (exit 1).
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Input(_) | Error::Io(_) | Error::Json(_) | Error::Dimension(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
