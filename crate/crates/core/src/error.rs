use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error(
        "symbol {symbol} at position {position} is outside an alphabet of size {alphabet_size}"
    )]
    SymbolOutOfRange {
        position: usize,
        symbol: u32,
        alphabet_size: u32,
    },

    #[error("k must be at least 1")]
    ZeroK,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index {index} is out of range for a sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("sequence of length {actual} is too short, at least {required} symbols are needed")]
    SequenceTooShort { required: usize, actual: usize },

    #[error("edge to vertex {vertex} is uncolored")]
    UncoloredEdge { vertex: usize },

    #[error("tree T_{{{k},{h}}} is too large")]
    TreeTooLarge { k: usize, h: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("checkpoint does not match this search: {0}")]
    CheckpointMismatch(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
