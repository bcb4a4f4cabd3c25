//! Structural fixed-mode verification: the strongly-connected-feedback
//! condition (a), the disjoint-cycle-cover condition (b), feasibility, and
//! essentiality of an information pattern.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::{disjoint_cycle_cover, scc_decompose};
use crate::system::{
    build_closed_loop_digraph, EdgeClass, InformationPattern, ModelError, StructuralSystem,
    SystemDigraph, VertexKind,
};

/// Outcome of condition (a): every state lies in an SCC of the closed-loop
/// digraph that contains a feedback link.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionAReport {
    pub holds: bool,
    /// States whose SCC contains no feedback link.
    pub violating_states: Vec<usize>,
    /// SCC id of each state in the closed-loop digraph.
    pub state_scc: Vec<usize>,
    /// Feedback links `(input, output)` contained in each SCC that has any.
    pub scc_feedback_map: BTreeMap<usize, Vec<(usize, usize)>>,
}

/// Vertex-disjoint cycles of the closed-loop digraph covering all states.
/// Cycles are lists of closed-loop vertex ids in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleFamily {
    pub cycles: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("vertex {0} appears in more than one cycle")]
    NotDisjoint(usize),
    #[error("state {0} is not covered")]
    Uncovered(usize),
    #[error("edge ({0}, {1}) is not in the digraph")]
    MissingEdge(usize, usize),
    #[error("empty cycle")]
    EmptyCycle,
}

impl CycleFamily {
    /// Checks disjointness, state coverage and edge existence against `digraph`.
    pub fn validate(&self, digraph: &SystemDigraph) -> Result<(), WitnessError> {
        let g = digraph.graph();
        let mut used = vec![false; g.vertex_count()];
        for cycle in &self.cycles {
            if cycle.is_empty() {
                return Err(WitnessError::EmptyCycle);
            }
            for (pos, &v) in cycle.iter().enumerate() {
                if v >= used.len() || used[v] {
                    return Err(WitnessError::NotDisjoint(v));
                }
                used[v] = true;
                let w = cycle[(pos + 1) % cycle.len()];
                if !g.has_edge(v, w) {
                    return Err(WitnessError::MissingEdge(v, w));
                }
            }
        }
        match (0..digraph.state_count()).find(|&x| !used[x]) {
            Some(x) => Err(WitnessError::Uncovered(x)),
            None => Ok(()),
        }
    }

    /// Splits the family into cycles with feedback links and state-only cycles.
    pub fn partition_by_feedback(&self, digraph: &SystemDigraph) -> (Vec<&[usize]>, Vec<&[usize]>) {
        self.cycles
            .iter()
            .map(Vec::as_slice)
            .partition(|c| feedback_count(digraph, c) > 0)
    }

    /// State sequences `i_1, ..., i_k` of cycles of the form
    /// `u_{i_1} -> x_{i_1} -> ... -> x_{i_k} -> y_{i_k} -> u_{i_1}` that carry
    /// exactly one feedback link.
    pub fn single_feedback_runs(&self, digraph: &SystemDigraph) -> Vec<Vec<usize>> {
        let mut runs = Vec::new();
        for cycle in &self.cycles {
            if feedback_count(digraph, cycle) != 1 {
                continue;
            }
            let len = cycle.len();
            let Some(start) = (0..len).find(|&i| digraph.vertex(cycle[i]).0 == VertexKind::Input)
            else {
                continue;
            };
            let states: Vec<usize> = (1..len)
                .map(|off| cycle[(start + off) % len])
                .filter(|&v| digraph.vertex(v).0 == VertexKind::State)
                .collect();
            runs.push(states);
        }
        runs
    }
}

fn feedback_count(digraph: &SystemDigraph, cycle: &[usize]) -> usize {
    (0..cycle.len())
        .filter(|&i| {
            digraph.edge_class(cycle[i], cycle[(i + 1) % cycle.len()])
                == Some(EdgeClass::OutputToInput)
        })
        .count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub condition_a: ConditionAReport,
    pub condition_b_witness: Option<CycleFamily>,
    pub feasible: bool,
}

/// What breaks when a single entry is removed from a pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryEvidence {
    /// The removed entry `(input, output)`.
    pub entry: (usize, usize),
    pub breaks_condition_a: bool,
    pub breaks_condition_b: bool,
}

impl EntryEvidence {
    pub fn removal_infeasible(&self) -> bool {
        self.breaks_condition_a || self.breaks_condition_b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EssentialityReport {
    pub essential: bool,
    pub feasible: bool,
    pub evidence: Vec<EntryEvidence>,
}

pub fn condition_a_on(digraph: &SystemDigraph) -> ConditionAReport {
    let dag = scc_decompose(digraph.graph());
    let mut scc_feedback_map: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (u, y) in digraph.feedback_entries() {
        let (yv, uv) = (digraph.output(y), digraph.input(u));
        if dag.same_scc(yv, uv) {
            scc_feedback_map
                .entry(dag.scc_of(yv))
                .or_default()
                .push((u, y));
        }
    }
    let state_scc: Vec<usize> = (0..digraph.state_count()).map(|x| dag.scc_of(x)).collect();
    let violating_states: Vec<usize> = (0..digraph.state_count())
        .filter(|&x| !scc_feedback_map.contains_key(&state_scc[x]))
        .collect();
    ConditionAReport {
        holds: violating_states.is_empty(),
        violating_states,
        state_scc,
        scc_feedback_map,
    }
}

pub fn condition_b_on(digraph: &SystemDigraph) -> Option<CycleFamily> {
    let optional: Vec<bool> = (0..digraph.graph().vertex_count())
        .map(|v| digraph.vertex(v).0 != VertexKind::State)
        .collect();
    disjoint_cycle_cover(digraph.graph(), &optional).map(|cycles| CycleFamily { cycles })
}

pub fn check_condition_a(
    sys: &StructuralSystem,
    k: &InformationPattern,
) -> Result<ConditionAReport, ModelError> {
    Ok(condition_a_on(&build_closed_loop_digraph(sys, k)?))
}

/// Returns a witness cycle family iff one exists.
pub fn check_condition_b(
    sys: &StructuralSystem,
    k: &InformationPattern,
) -> Result<Option<CycleFamily>, ModelError> {
    Ok(condition_b_on(&build_closed_loop_digraph(sys, k)?))
}

/// No structurally fixed modes iff both conditions hold.
pub fn check_feasible(
    sys: &StructuralSystem,
    k: &InformationPattern,
) -> Result<FeasibilityReport, ModelError> {
    let digraph = build_closed_loop_digraph(sys, k)?;
    let condition_a = condition_a_on(&digraph);
    let condition_b_witness = condition_b_on(&digraph);
    let feasible = condition_a.holds && condition_b_witness.is_some();
    Ok(FeasibilityReport {
        condition_a,
        condition_b_witness,
        feasible,
    })
}

/// Boolean feasibility, without building reports.
pub fn is_feasible(sys: &StructuralSystem, k: &InformationPattern) -> Result<bool, ModelError> {
    let digraph = build_closed_loop_digraph(sys, k)?;
    Ok(condition_a_on(&digraph).holds && condition_b_on(&digraph).is_some())
}

/// A feasible pattern is essential iff removing any single entry makes it
/// infeasible. Adding entries never destroys feasibility, so single
/// deletions decide minimality among all sub-patterns.
pub fn is_essential(
    sys: &StructuralSystem,
    k: &InformationPattern,
) -> Result<EssentialityReport, ModelError> {
    let feasible = is_feasible(sys, k)?;
    let mut evidence = Vec::with_capacity(k.nnz());
    for (i, j) in k.nonzeros() {
        let digraph = build_closed_loop_digraph(sys, &k.without_entry(i, j))?;
        evidence.push(EntryEvidence {
            entry: (i, j),
            breaks_condition_a: !condition_a_on(&digraph).holds,
            breaks_condition_b: condition_b_on(&digraph).is_none(),
        });
    }
    let essential = feasible && evidence.iter().all(EntryEvidence::removal_infeasible);
    Ok(EssentialityReport {
        essential,
        feasible,
        evidence,
    })
}
