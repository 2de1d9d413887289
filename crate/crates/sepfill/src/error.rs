use crate::graph::Vertex;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {0} is not a member of the graph")]
    Membership(Vertex),

    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),

    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("no cluster contains the given vertex set")]
    NotFound,

    #[error("expected {expected} component decompositions, got {actual}")]
    Alignment { expected: usize, actual: usize },

    #[error("graph has {size} vertices, exceeding the exact-solve limit {limit}")]
    SizeLimit { size: usize, limit: usize },

    #[error("ordering is not a permutation of the graph's vertices")]
    Permutation,

    #[error("vertices {0} and {1} are adjacent, no vertex cut exists")]
    AdjacentPair(Vertex, Vertex),

    #[error("graph has no separator")]
    NoSeparator,

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("invalid CSP instance: {0}")]
    InvalidInstance(String),
}

impl Error {
    pub fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
