//! Digraph and bipartite-graph primitives.

mod decomposition;
mod digraph;
mod matching;
mod scc;

pub use decomposition::{disjoint_cycle_cover, matching_decomposition, PathCycleDecomposition};
pub use digraph::{BipartiteGraph, Digraph};
pub use matching::{max_matching, Matching};
pub use scc::{scc_decompose, scc_reachability, CondensationDag};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge ({tail}, {head}) has an endpoint outside 0..{vertex_count}")]
    VertexOutOfRange {
        tail: usize,
        head: usize,
        vertex_count: usize,
    },
    #[error("bipartite edge ({left}, {right}) outside {left_count}x{right_count}")]
    BipartiteOutOfRange {
        left: usize,
        right: usize,
        left_count: usize,
        right_count: usize,
    },
    #[error("edge ({left}, {right}) shares an endpoint with another matching edge")]
    NotAMatching { left: usize, right: usize },
    #[error("matching edge ({tail}, {head}) is not an edge of the graph")]
    EdgeNotInGraph { tail: usize, head: usize },
    #[error("matching is {left}x{right} but the graph has {vertex_count} vertices")]
    MatchingShape {
        left: usize,
        right: usize,
        vertex_count: usize,
    },
    #[error("scc id {scc} out of range (graph has {count} sccs)")]
    SccOutOfRange { scc: usize, count: usize },
}
