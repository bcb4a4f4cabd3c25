use std::collections::BTreeSet;

use super::{index_pairing, sequential_pairing, DesignError, SccSelector, SmallestIndex};
use crate::analysis::{check_condition_a, is_feasible};
use crate::graph::{max_matching, scc_decompose, scc_reachability, Digraph, Matching};
use crate::system::{
    state_bipartite_graph, InformationPattern, ModelError, StructuralPattern, StructuralSystem,
};

fn require_square(a: &StructuralPattern) -> Result<usize, DesignError> {
    if a.rows() != a.cols() {
        return Err(ModelError::DimensionMismatch {
            what: "dynamics pattern",
            expected_rows: a.rows(),
            expected_cols: a.rows(),
            rows: a.rows(),
            cols: a.cols(),
        }
        .into());
    }
    Ok(a.rows())
}

/// State digraph of `a` plus the state-to-state shortcut `x_j -> x_i` of every
/// feedback entry `(i, j)`; with dedicated inputs and outputs this has the same
/// state reachability as the closed-loop digraph.
fn shortcut_graph(a: &StructuralPattern, entries: &BTreeSet<(usize, usize)>) -> Digraph {
    let edges = a
        .nonzeros()
        .map(|(r, c)| (c, r))
        .chain(entries.iter().map(|&(i, j)| (j, i)));
    Digraph::new(a.rows(), edges).expect("entries in range")
}

/// Feedback pattern closing the paths of a matching of `B(A)` into cycles:
/// right-unmatched states read the outputs of left-unmatched states through an
/// index pairing. The result has `n - |m|` entries.
pub fn design_condition_b(
    a: &StructuralPattern,
    m: &Matching,
) -> Result<InformationPattern, DesignError> {
    let n = require_square(a)?;
    let sys = StructuralSystem::with_identity_io(a.clone())?;
    let bipartite = state_bipartite_graph(&sys);
    if m.left_count() != n || m.right_count() != n {
        return Err(DesignError::InvalidMatching(format!(
            "matching is {}x{}, expected {n}x{n}",
            m.left_count(),
            m.right_count()
        )));
    }
    if let Some((t, h)) = m.edge_outside(&bipartite) {
        return Err(DesignError::InvalidMatching(format!(
            "edge (x{}, x{}) is not a state edge",
            t + 1,
            h + 1
        )));
    }
    let pairing = index_pairing(m.right_unmatched(), m.left_unmatched());
    Ok(InformationPattern::new(n, n, pairing.pairs)?)
}

/// `design_condition_b` on a maximum matching: the sparsest pattern meeting
/// condition (b) with dedicated inputs and outputs.
pub fn design_condition_b_sparsest(
    a: &StructuralPattern,
) -> Result<InformationPattern, DesignError> {
    require_square(a)?;
    let sys = StructuralSystem::with_identity_io(a.clone())?;
    let m = max_matching(&state_bipartite_graph(&sys));
    design_condition_b(a, &m)
}

/// Sparsest pattern meeting condition (a) with dedicated inputs and outputs,
/// with `max(beta_top, beta_bottom)` entries.
pub fn design_condition_a_sparsest(
    a: &StructuralPattern,
) -> Result<InformationPattern, DesignError> {
    design_condition_a_with(a, &SmallestIndex)
}

pub fn design_condition_a_with(
    a: &StructuralPattern,
    selector: &dyn SccSelector,
) -> Result<InformationPattern, DesignError> {
    let n = require_square(a)?;
    if n == 0 {
        return Ok(InformationPattern::zeros(0, 0));
    }
    let dag = scc_decompose(&shortcut_graph(a, &BTreeSet::new()));
    let (beta_top, beta_bottom) = (dag.beta_top(), dag.beta_bottom());

    // Reversing every edge swaps top and bottom components and transposes
    // the feedback pattern, so the construction only handles beta_top <= beta_bottom.
    let k = if beta_top <= beta_bottom {
        link_components(a, selector)?
    } else {
        link_components(&a.transpose(), selector)?.transpose()
    };

    if k.nnz() != beta_top.max(beta_bottom) {
        return Err(DesignError::Internal(format!(
            "condition (a) construction used {} entries, expected {}",
            k.nnz(),
            beta_top.max(beta_bottom)
        )));
    }
    let sys = StructuralSystem::with_identity_io(a.clone())?;
    if !check_condition_a(&sys, &k)?.holds {
        return Err(DesignError::Internal(
            "condition (a) construction left a state without feedback".into(),
        ));
    }
    Ok(k)
}

/// Links every top and bottom component into one strongly connected
/// closed-loop digraph. Requires `beta_top <= beta_bottom`.
fn link_components(
    a: &StructuralPattern,
    selector: &dyn SccSelector,
) -> Result<InformationPattern, DesignError> {
    let n = a.rows();
    let mut entries: BTreeSet<(usize, usize)> = BTreeSet::new();
    let dag = scc_decompose(&shortcut_graph(a, &entries));
    let rep = |scc: usize| selector.representative(&dag, scc);

    let mut tops = dag.non_top().to_vec();
    let mut bottoms = dag.non_bottom().to_vec();
    tops.sort_by_key(|&c| rep(c));
    bottoms.sort_by_key(|&c| rep(c));
    debug_assert!(tops.len() <= bottoms.len());

    // Round one: a maximum matching of top-reaches-bottom, closed into one
    // cycle by feedback from each matched bottom to the next matched top.
    let reach = scc_reachability(&dag, &tops, &bottoms)?;
    let matching = max_matching(&reach);
    let closing = sequential_pairing(matching.edges())?;
    for &(b, t) in &closing.pairs {
        entries.insert((rep(tops[t]), rep(bottoms[b])));
    }

    // Round two: unmatched tops now reach every unmatched bottom through the
    // cycle, so a second matching saturates them.
    let free_tops = matching.left_unmatched().to_vec();
    let free_bottoms = matching.right_unmatched().to_vec();
    if !free_tops.is_empty() {
        let merged = scc_decompose(&shortcut_graph(a, &entries));
        let src: Vec<usize> = free_tops
            .iter()
            .map(|&t| merged.scc_of(rep(tops[t])))
            .collect();
        let dst: Vec<usize> = free_bottoms
            .iter()
            .map(|&b| merged.scc_of(rep(bottoms[b])))
            .collect();
        let second = max_matching(&scc_reachability(&merged, &src, &dst)?);
        if !second.left_unmatched().is_empty() {
            return Err(DesignError::Internal(format!(
                "second matching left {} top components unsaturated",
                second.left_unmatched().len()
            )));
        }
        let closing = sequential_pairing(second.edges())?;
        for &(b, t) in &closing.pairs {
            entries.insert((rep(tops[free_tops[t]]), rep(bottoms[free_bottoms[b]])));
        }
    }

    // Remaining bottom components feed back into the single top component.
    let merged = scc_decompose(&shortcut_graph(a, &entries));
    let [hub] = merged.non_top() else {
        return Err(DesignError::Internal(format!(
            "expected one top component after linking, found {}",
            merged.beta_top()
        )));
    };
    let hub_rep = selector.representative(&merged, *hub);
    for &c in merged.non_bottom() {
        if c != *hub {
            entries.insert((hub_rep, selector.representative(&merged, c)));
        }
    }

    Ok(InformationPattern::new(n, n, entries)?)
}

/// Sum of the two sparsest single-condition patterns, pruned to an essential
/// pattern by deleting entries in row-major order while feasibility survives.
pub fn design_feasible_essential(a: &StructuralPattern) -> Result<InformationPattern, DesignError> {
    require_square(a)?;
    let sys = StructuralSystem::with_identity_io(a.clone())?;
    let mut k = design_condition_a_sparsest(a)?.pattern_sum(&design_condition_b_sparsest(a)?)?;
    if !is_feasible(&sys, &k)? {
        return Err(DesignError::Internal(
            "sum of condition patterns is infeasible".into(),
        ));
    }
    'prune: loop {
        for (i, j) in k.nonzeros().collect::<Vec<_>>() {
            let candidate = k.without_entry(i, j);
            if is_feasible(&sys, &candidate)? {
                k = candidate;
                continue 'prune;
            }
        }
        break;
    }
    Ok(k)
}
