use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced anywhere in the parse / profile / map / evaluate pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("line {line}: index error: {msg}")]
    Index { line: usize, msg: String },

    #[error("line {line}: unsupported: {msg}")]
    Unsupported { line: usize, msg: String },

    #[error("unsupported: no decomposition of `{0}` into the primitive gate set")]
    NoDecomposition(String),

    #[error("index error: qubit {qubit} out of range for {size}-qubit device")]
    QubitOutOfRange { qubit: usize, size: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("capacity error: circuit needs {needed} qubits but device has {available}")]
    Capacity { needed: usize, available: usize },

    #[error("routing error: physical qubits {0} and {1} are mutually unreachable")]
    Routing(usize, usize),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unknown metric: {0}")]
    UnknownMetric(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn syntax(line: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn index(line: usize, msg: impl Into<String>) -> Self {
        Error::Index {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn unsupported(line: usize, msg: impl Into<String>) -> Self {
        Error::Unsupported {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
