use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{bisect_feedback, split_cycle, DesignError, SplitVariant};
use crate::analysis::{condition_b_on, is_essential};
use crate::graph::scc_decompose;
use crate::system::{
    build_closed_loop_digraph, build_state_digraph, InformationPattern, StructuralSystem,
};

/// Every pattern one bisection or one split away from `k`.
fn neighbours(
    sys: &StructuralSystem,
    k: &InformationPattern,
) -> Result<Vec<InformationPattern>, DesignError> {
    let n = sys.n();
    let mut out = Vec::new();

    let state_sccs = scc_decompose(build_state_digraph(sys).graph());
    for (i, j) in k.nonzeros() {
        for i2 in 0..n {
            for j2 in 0..n {
                if state_sccs.same_scc(i2, j2) {
                    match bisect_feedback(sys, k, (i, j), (i2, j2)) {
                        Ok(next) => out.push(next),
                        Err(DesignError::ConditionANotMet) => return Ok(out),
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }

    let closed = build_closed_loop_digraph(sys, k)?;
    if let Some(witness) = condition_b_on(&closed) {
        for run in witness.single_feedback_runs(&closed) {
            for l in 1..run.len() {
                out.push(split_cycle(sys, k, &run, l, SplitVariant::CycleClosing)?);
            }
        }
    }
    Ok(out)
}

/// Breadth-first closure of bisections and splits starting at an essential
/// pattern, up to `depth` rounds. Each candidate is kept only if it is itself
/// essential; the result is sorted and free of duplicates.
pub fn enumerate_essential_family(
    sys: &StructuralSystem,
    k: &InformationPattern,
    depth: usize,
) -> Result<Vec<InformationPattern>, DesignError> {
    if !sys.has_identity_io() {
        return Err(DesignError::RequiresIdentityIo);
    }
    if !is_essential(sys, k)?.essential {
        return Err(DesignError::NotEssential);
    }
    let mut family: BTreeSet<InformationPattern> = BTreeSet::from([k.clone()]);
    let mut frontier = vec![k.clone()];
    for _ in 0..depth {
        let candidates: BTreeSet<InformationPattern> = frontier
            .iter()
            .map(|p| neighbours(sys, p))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .filter(|p| !family.contains(p))
            .collect();
        let accepted: Vec<InformationPattern> = candidates
            .into_par_iter()
            .filter_map(|p| match is_essential(sys, &p) {
                Ok(r) if r.essential => Some(Ok(p)),
                Ok(_) => None,
                Err(e) => Some(Err(e)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if accepted.is_empty() {
            break;
        }
        family.extend(accepted.iter().cloned());
        frontier = accepted;
    }
    Ok(family.into_iter().collect())
}
