use serde::Serialize;

use super::DesignError;
use crate::graph::CondensationDag;

/// Maximum matching of the complete bipartite graph between two index sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexPairing {
    pub pairs: Vec<(usize, usize)>,
}

/// Pairs the `t`-th smallest of `set_i` with the `t`-th smallest of `set_j`.
pub fn index_pairing(set_i: &[usize], set_j: &[usize]) -> IndexPairing {
    let mut i: Vec<usize> = set_i.to_vec();
    let mut j: Vec<usize> = set_j.to_vec();
    i.sort_unstable();
    i.dedup();
    j.sort_unstable();
    j.dedup();
    IndexPairing {
        pairs: i.into_iter().zip(j).collect(),
    }
}

/// Edges that close a matching into one cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequentialPairing {
    pub pairs: Vec<(usize, usize)>,
}

/// Given matched pairs `(j_l, i_l)` in order `l = 1..k`, returns
/// `(i_2, j_1), ..., (i_k, j_{k-1}), (i_1, j_k)`.
///
/// Reading a matched pair as `j_l -> i_l` and a returned pair `(i, j)` as
/// `i -> j`, the union is the single cycle
/// `j_1 -> i_1 -> j_k -> i_k -> j_{k-1} -> ... -> i_2 -> j_1`.
pub fn sequential_pairing(matched: &[(usize, usize)]) -> Result<SequentialPairing, DesignError> {
    if matched.is_empty() {
        return Err(DesignError::EmptyMatching);
    }
    for (a, &(j, i)) in matched.iter().enumerate() {
        if matched[..a].iter().any(|&(j2, i2)| j2 == j || i2 == i) {
            return Err(DesignError::RepeatedIndex { left: j, right: i });
        }
    }
    let k = matched.len();
    let mut pairs: Vec<(usize, usize)> = (1..k).map(|l| (matched[l].1, matched[l - 1].0)).collect();
    pairs.push((matched[0].1, matched[k - 1].0));
    Ok(SequentialPairing { pairs })
}

/// Picks one representative state in a strongly connected component.
pub trait SccSelector {
    fn representative(&self, dag: &CondensationDag, scc: usize) -> usize;
}

/// The smallest state index in the component.
#[derive(Debug, Clone, Copy, Default)]
pub struct SmallestIndex;

impl SccSelector for SmallestIndex {
    fn representative(&self, dag: &CondensationDag, scc: usize) -> usize {
        dag.members(scc)[0]
    }
}
