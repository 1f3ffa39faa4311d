use thiserror::Error;

use crate::graph::{EdgeId, VertexId, Weight};

/// Everything that can go wrong inside the core algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex id {0} is out of range")]
    VertexOutOfRange(VertexId),
    #[error("edge id {0} is out of range")]
    EdgeOutOfRange(EdgeId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge {u}-{v} has weight 0; weights must be positive integers")]
    NonPositiveWeight { u: VertexId, v: VertexId },
    #[error("conflicting duplicate edge {u}-{v} with weights {first} and {second}")]
    ConflictingEdge {
        u: VertexId,
        v: VertexId,
        first: Weight,
        second: Weight,
    },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error(
        "graph is not minimal: edge {edge} has weight {weight} but its endpoints are at distance {distance}"
    )]
    NotMinimal {
        edge: EdgeId,
        weight: Weight,
        distance: i64,
    },
    #[error("integer overflow in path-length or size arithmetic")]
    Overflow,
    #[error("factor list is empty")]
    EmptyFactorList,
    #[error("factor {0} has no vertices")]
    EmptyFactor(usize),
    #[error("edge {edge} is not a product edge: its endpoints differ in {differing} coordinates")]
    MalformedProductEdge { edge: EdgeId, differing: usize },
    #[error("edges {0} and {1} do not share exactly one endpoint")]
    NoSharedEndpoint(EdgeId, EdgeId),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(VertexId, VertexId),
    #[error("edge set is not a spanning tree: {0}")]
    NotSpanningTree(&'static str),
    #[error("edge classes do not partition the edge set")]
    NotAPartition,
    #[error(
        "class {class}: edges between components {a} and {b} carry different weights ({first} vs {second})"
    )]
    WeightMismatch {
        class: usize,
        a: usize,
        b: usize,
        first: Weight,
        second: Weight,
    },
    #[error("class {class}: edge {edge} has both endpoints in the same component")]
    ClassEdgeInsideComponent { class: usize, edge: EdgeId },
    #[error("vertex map has arity {found}, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(&'static str),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("graph with {0} vertices is too large for brute force (limit {1})")]
    TooLarge(usize, usize),
    #[error("internal invariant violated: {0}")]
    Invariant(&'static str),
    #[error("decomposition failed self-verification")]
    VerificationFailed,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
