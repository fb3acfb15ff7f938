use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An edge endpoint lies outside `[0, n)`.
    #[error("edge {edge}: endpoint {vertex} out of range for {n} vertices")]
    EdgeOutOfRange {
        edge: usize,
        vertex: usize,
        n: usize,
    },

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    /// The graph has a directed cycle; `witness` lies on one.
    #[error("graph contains a cycle through vertex {witness}")]
    Cycle { witness: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid chain decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("adjacency list of vertex {vertex} is not in ascending topological order")]
    UnsortedAdjacency { vertex: usize },

    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
