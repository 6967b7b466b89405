use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("graph size t = {0} is too small (need t >= {1})")]
    GraphTooSmall(usize, usize),

    #[error("invalid subgraph: {0}")]
    InvalidSubgraph(String),

    #[error("subgraph is not attainable: {0}")]
    NotAttainable(String),

    #[error("size limit exceeded: {what} = {got}, limit {limit}")]
    SizeLimit { what: &'static str, got: usize, limit: usize },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("invalid edge set: {0}")]
    InvalidEdgeSet(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("counter overflow while counting {0}")]
    Overflow(&'static str),

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
