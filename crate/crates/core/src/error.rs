use thiserror::Error;

use crate::graph::VertexId;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("vertex {0} out of range for a graph with {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("arc {0} out of range for a graph with {1} arcs")]
    ArcOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("source and target must differ (both are {0})")]
    SourceEqualsTarget(VertexId),
    #[error("path enumeration exceeded the limit of {limit} paths")]
    PathLimitExceeded { limit: usize },
    #[error("no path from {from} to {to}")]
    NoPath { from: VertexId, to: VertexId },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("graph contains a directed cycle")]
    Cyclic,
    #[error("negative arc costs are only supported on acyclic graphs")]
    NegativeCostOnCyclicGraph,
    #[error(
        "the auxiliary-graph solver requires an acyclic graph: on a cyclic graph the auxiliary \
         shortest path may correspond to a walk that repeats vertices, not to an s-t path"
    )]
    AuxiliaryRequiresAcyclic,
    #[error("interaction matrix has a nonzero entry between non-adjacent arcs {0} and {1}")]
    NotAdjacent(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("instance is not of the required graph family: {0}")]
    WrongFamily(String),
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(position: impl ToString, message: impl ToString) -> Self {
        Error::Parse { position: position.to_string(), message: message.to_string() }
    }
}
