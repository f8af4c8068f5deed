use thiserror::Error;

use crate::tree::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed tree text at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("vertex {0} is out of range for a tree with {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("relation is only defined on distinct vertices (got {0} twice)")]
    SameVertex(NodeId),
    #[error("target undefined for white vertices")]
    TargetOfWhite(NodeId),
    #[error("tree is not well bicoloured")]
    NotWellBicoloured,
    #[error("size must be positive")]
    ZeroSize,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("exhaustive enumeration refused: n = {n} exceeds the bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("map is disconnected")]
    Disconnected,
    #[error("trace complete: the current vertex is the root")]
    TraceComplete,
    #[error("sampler aborted after exceeding the node budget of {budget}")]
    BudgetExceeded { budget: usize },
    #[error("replicate {replicate}: {source}")]
    Replicate {
        replicate: u64,
        #[source]
        source: Box<Error>,
    },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    /// Strips replicate tags, returning the underlying cause.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::Replicate { source, .. } => source.root_cause(),
            other => other,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
