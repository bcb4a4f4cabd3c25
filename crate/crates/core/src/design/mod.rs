//! Constructive design of information patterns for systems with one
//! dedicated input and output per state.

mod construct;
mod family;
mod pairing;
mod transforms;

pub use construct::{
    design_condition_a_sparsest, design_condition_a_with, design_condition_b,
    design_condition_b_sparsest, design_feasible_essential,
};
pub use family::enumerate_essential_family;
pub use pairing::{
    index_pairing, sequential_pairing, IndexPairing, SccSelector, SequentialPairing, SmallestIndex,
};
pub use transforms::{bisect_feedback, split_cycle, SplitVariant};

use crate::graph::GraphError;
use crate::system::ModelError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DesignError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("sequential pairing needs a non-empty matching")]
    EmptyMatching,
    #[error("pair ({left}, {right}) repeats an index")]
    RepeatedIndex { left: usize, right: usize },
    #[error("not a matching of the state bipartite graph: {0}")]
    InvalidMatching(String),
    #[error("transform requires identity input and output patterns")]
    RequiresIdentityIo,
    #[error("state index out of range for n = {n}")]
    IndexOutOfRange { n: usize },
    #[error("pattern has no entry ({}, {})", input + 1, output + 1)]
    EntryAbsent { input: usize, output: usize },
    #[error("x{} and x{} are not in the same strongly connected component", first + 1, second + 1)]
    NotCoScc { first: usize, second: usize },
    #[error("pattern does not satisfy condition (a)")]
    ConditionANotMet,
    #[error("cycle is not part of a condition (b) witness")]
    ConditionBNotMet,
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("split position {position} outside 1..{length}")]
    InvalidPosition { position: usize, length: usize },
    #[error("seed pattern is not essential")]
    NotEssential,
    #[error("internal error: {0}")]
    Internal(String),
}
