//! Two-block partition of a DAG into source-to-sink blocks, solved through
//! the condition (a) design problem on an associated structural system.

use std::collections::BTreeSet;

use serde::Serialize;

use super::ValidationError;
use crate::analysis::condition_a_on;
use crate::design::design_condition_a_sparsest;
use crate::graph::Digraph;
use crate::system::{
    build_closed_loop_digraph, InformationPattern, StructuralPattern, StructuralSystem,
};

/// Largest DAG `solve_decomposition_via_patterns` accepts by default.
pub const DEFAULT_DECOMPOSITION_CAP: usize = 12;

/// System with one state per DAG vertex, `x_i -> x_j` for every arc
/// `v_i -> v_j`, and a dedicated input and output on every state.
pub fn reduce_decomposition(dag: &Digraph) -> Result<StructuralSystem, ValidationError> {
    if !dag.is_acyclic() {
        return Err(ValidationError::NotAcyclic);
    }
    let n = dag.vertex_count();
    let a = StructuralPattern::new(n, n, dag.edges().iter().map(|&(i, j)| (j, i)))?;
    Ok(StructuralSystem::with_identity_io(a)?)
}

/// Reasons a proposed partition is rejected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionViolation {
    #[error("vertex {0} is out of range, repeated, or missing")]
    NotAPartition(usize),
    #[error("a block is empty")]
    EmptyBlock,
    #[error("arc v{} -> v{} runs from the second block into the first", from + 1, to + 1)]
    BackwardArc { from: usize, to: usize },
    #[error("v{} is on no source-to-sink path inside its block", vertex + 1)]
    Uncovered { vertex: usize },
}

/// Ordered split of the vertex set: arcs between the blocks may only go
/// from `gamma1` to `gamma2`, and every vertex lies on a path inside its own
/// block from a source of the DAG to a sink of the DAG.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DagPartition {
    pub gamma1: Vec<usize>,
    pub gamma2: Vec<usize>,
}

impl DagPartition {
    pub fn validate(&self, dag: &Digraph) -> Result<(), PartitionViolation> {
        let n = dag.vertex_count();
        let mut block = vec![None; n];
        for (b, members) in [&self.gamma1, &self.gamma2].into_iter().enumerate() {
            if members.is_empty() {
                return Err(PartitionViolation::EmptyBlock);
            }
            for &v in members {
                if v >= n || block[v].is_some() {
                    return Err(PartitionViolation::NotAPartition(v));
                }
                block[v] = Some(b);
            }
        }
        if let Some(v) = block.iter().position(Option::is_none) {
            return Err(PartitionViolation::NotAPartition(v));
        }
        let block: Vec<usize> = block.into_iter().flatten().collect();
        for &(from, to) in dag.edges() {
            if block[from] == 1 && block[to] == 0 {
                return Err(PartitionViolation::BackwardArc { from, to });
            }
        }

        let mut indeg = vec![0usize; n];
        for &(_, to) in dag.edges() {
            indeg[to] += 1;
        }
        let reversed = dag.reversed();
        for b in 0..2 {
            let inside = |v: usize| block[v] == b;
            let from_source = sweep(dag, (0..n).filter(|&v| inside(v) && indeg[v] == 0), &inside);
            let to_sink = sweep(
                &reversed,
                (0..n).filter(|&v| inside(v) && dag.successors(v).is_empty()),
                &inside,
            );
            if let Some(vertex) = (0..n).find(|&v| inside(v) && !(from_source[v] && to_sink[v])) {
                return Err(PartitionViolation::Uncovered { vertex });
            }
        }
        Ok(())
    }
}

fn sweep(
    graph: &Digraph,
    starts: impl Iterator<Item = usize>,
    inside: &dyn Fn(usize) -> bool,
) -> Vec<bool> {
    let mut seen = vec![false; graph.vertex_count()];
    let mut stack: Vec<usize> = starts.collect();
    for &v in &stack {
        seen[v] = true;
    }
    while let Some(v) = stack.pop() {
        for &w in graph.successors(v) {
            if inside(w) && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// A partition together with the pattern that realises it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionSolution {
    pub partition: DagPartition,
    /// Meets condition (a) on the reduced system with exactly two state
    /// components, namely the two blocks.
    pub pattern: InformationPattern,
}

/// Orders two blocks so that arcs between them leave the first one.
fn orient(dag: &Digraph, blocks: [Vec<usize>; 2]) -> DagPartition {
    let mut in_first = vec![false; dag.vertex_count()];
    for &v in &blocks[0] {
        in_first[v] = true;
    }
    let forward = dag
        .edges()
        .iter()
        .any(|&(f, t)| in_first[f] && !in_first[t]);
    let backward = dag
        .edges()
        .iter()
        .any(|&(f, t)| !in_first[f] && in_first[t]);
    let [b0, b1] = blocks;
    let swap = if forward != backward {
        backward
    } else {
        b1.first() < b0.first()
    };
    if swap {
        DagPartition {
            gamma1: b1,
            gamma2: b0,
        }
    } else {
        DagPartition {
            gamma1: b0,
            gamma2: b1,
        }
    }
}

/// Groups states by closed-loop component when condition (a) holds and
/// exactly two components appear.
fn two_blocks(sys: &StructuralSystem, k: &InformationPattern) -> Option<[Vec<usize>; 2]> {
    let report = condition_a_on(&build_closed_loop_digraph(sys, k).ok()?);
    if !report.holds {
        return None;
    }
    let ids: BTreeSet<usize> = report.state_scc.iter().copied().collect();
    if ids.len() != 2 {
        return None;
    }
    let first = report.state_scc[0];
    let (b0, b1): (Vec<usize>, Vec<usize>) =
        (0..sys.n()).partition(|&x| report.state_scc[x] == first);
    Some([b0, b1])
}

/// Sparsest condition (a) pattern of each block's induced subsystem, lifted
/// back to the whole system.
fn per_block_pattern(
    sys: &StructuralSystem,
    blocks: &[Vec<usize>; 2],
) -> Option<InformationPattern> {
    let n = sys.n();
    let mut entries = Vec::new();
    for members in blocks {
        let mut local = vec![usize::MAX; n];
        for (l, &v) in members.iter().enumerate() {
            local[v] = l;
        }
        let sub = StructuralPattern::new(
            members.len(),
            members.len(),
            sys.a()
                .nonzeros()
                .filter(|&(r, c)| local[r] != usize::MAX && local[c] != usize::MAX)
                .map(|(r, c)| (local[r], local[c])),
        )
        .ok()?;
        let k = design_condition_a_sparsest(&sub).ok()?;
        entries.extend(k.nonzeros().map(|(i, j)| (members[i], members[j])));
    }
    InformationPattern::new(n, n, entries).ok()
}

/// Finds a two-block partition through information patterns, or `None` when
/// the DAG has none.
///
/// Every terminal vertex (source or sink) is given one of two colours; the
/// candidate pattern links each sink to each source of the same colour. A
/// valid partition makes those links close exactly its two blocks into
/// strongly connected components, so scanning all colourings is complete.
/// Each candidate partition read off the components is validated directly.
/// Among valid outcomes the one with the sparsest realising pattern wins.
pub fn solve_decomposition_via_patterns(
    dag: &Digraph,
    cap: usize,
) -> Result<Option<DecompositionSolution>, ValidationError> {
    let n = dag.vertex_count();
    if n > cap {
        return Err(ValidationError::CapExceeded { size: n, cap });
    }
    let sys = reduce_decomposition(dag)?;
    let mut indeg = vec![0usize; n];
    for &(_, to) in dag.edges() {
        indeg[to] += 1;
    }
    let sources: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let sinks: Vec<usize> = (0..n).filter(|&v| dag.successors(v).is_empty()).collect();
    let terminals: Vec<usize> = sources
        .iter()
        .chain(&sinks)
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut colour = vec![false; n];

    let mut best: Option<DecompositionSolution> = None;
    // The first terminal keeps colour 0; swapping colours gives the same split.
    for mask in 0..(1u64 << terminals.len().saturating_sub(1)) {
        for (t, &v) in terminals.iter().enumerate().skip(1) {
            colour[v] = mask & (1 << (t - 1)) != 0;
        }
        let links = sinks.iter().flat_map(|&snk| {
            let colour = &colour;
            sources
                .iter()
                .filter(move |&&src| colour[src] == colour[snk])
                .map(move |&src| (src, snk))
        });
        let k_full = InformationPattern::new(n, n, links)?;
        let Some(blocks) = two_blocks(&sys, &k_full) else {
            continue;
        };
        let partition = orient(dag, blocks.clone());
        if partition.validate(dag).is_err() {
            continue;
        }
        let pattern = per_block_pattern(&sys, &blocks)
            .filter(|k| two_blocks(&sys, k).as_ref() == Some(&blocks))
            .unwrap_or(k_full);
        let better = match &best {
            None => true,
            Some(b) => (pattern.nnz(), &partition) < (b.pattern.nnz(), &b.partition),
        };
        if better {
            best = Some(DecompositionSolution { partition, pattern });
        }
    }
    Ok(best)
}
