use crate::graph::Edge;
use crate::plan::Mode;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("edge {0} has nonpositive weight {1}")]
    NonPositiveWeight(Edge, String),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {0} is not in the graph")]
    EdgeNotInGraph(Edge),
    #[error("mode {0} is not supported here")]
    UnsupportedMode(Mode),
    #[error("graph has more than {budget} simple cycles; too large for exact enumeration")]
    CycleBudgetExceeded { budget: usize },
    #[error("graph has {edges} edges, above the exhaustive-search cap of {cap}")]
    EdgeCapExceeded { edges: usize, cap: usize },
    #[error("cycle length bound must be at least 3, got {0}")]
    InvalidSigma(usize),
    #[error("graph is not {sigma}-chordal: found a chordless cycle with {found} edges")]
    NotChordal { sigma: usize, found: usize },
    #[error("graph is not complete")]
    NotComplete,
    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),
    #[error("terminal pair {0} is already an edge; it must be cut outright")]
    PairIsEdge(Edge),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("support already covers every broken cycle")]
    AlreadyCovered,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
