use crate::graph::VertexId;
use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range (graph has {vertex_count} vertices)")]
    InvalidVertex {
        vertex: VertexId,
        vertex_count: usize,
    },

    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),

    #[error("no separating vertex cut exists between adjacent vertices {0} and {1}")]
    NoSeparatingCut(VertexId, VertexId),

    #[error("infeasible: {source_vertex} and {target} admit only {achievable} openly disjoint paths, {required} required")]
    Infeasible {
        source_vertex: VertexId,
        target: VertexId,
        achievable: usize,
        required: usize,
    },

    #[error("terminals are only {actual}-connected, expected exactly {expected}")]
    ConnectivityMismatch { expected: usize, actual: usize },

    #[error("{what} has size {size}, above the brute-force bound {bound}")]
    TooLarge {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("set is not a core")]
    NotACore,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("solution edge ({0}, {1}) is not an edge of the instance")]
    UnknownEdge(VertexId, VertexId),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
