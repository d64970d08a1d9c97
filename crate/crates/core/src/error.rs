use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("vertices {u} and {v} are adjacent; the query requires a non-adjacent pair")]
    AdjacentPair { u: Vertex, v: Vertex },

    #[error(
        "common neighbourhood of ({u}, {v}) has {size} vertices, above the subcall limit {limit}; \
         the processing order is probably not valid for this graph's closure, recompute it with \
         the weak-closure ordering or raise the limit"
    )]
    SubcallTooLarge {
        u: Vertex,
        v: Vertex,
        size: usize,
        limit: usize,
    },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("bound violated ({bound_name}): observed {observed} maximal cliques exceeds bound {bound}")]
    BoundViolation {
        bound_name: &'static str,
        observed: u64,
        bound: String,
    },
}
