use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{EssentialityReport, FeasibilityReport};
use crate::graph::scc_decompose;
use crate::system::SystemDigraph;

pub const REPORT_SCHEMA: &str = "infopat-report";
pub const REPORT_VERSION: u32 = 1;

/// Envelope shared by every JSON report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report<T> {
    pub schema: &'static str,
    pub version: u32,
    pub command: String,
    pub result: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: impl Into<String>, result: T) -> Self {
        Self {
            schema: REPORT_SCHEMA,
            version: REPORT_VERSION,
            command: command.into(),
            result,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values serialize");
        s.push('\n');
        s
    }
}

fn one_based(entry: (usize, usize)) -> [usize; 2] {
    [entry.0 + 1, entry.1 + 1]
}

/// Feasibility verdict with vertex labels and 1-based pattern entries.
pub fn feasibility_value(closed: &SystemDigraph, report: &FeasibilityReport) -> Value {
    let dag = scc_decompose(closed.graph());
    let mut components: Vec<Value> = report
        .condition_a
        .scc_feedback_map
        .iter()
        .map(|(&scc, links)| {
            let vertices: Vec<String> = dag.members(scc).iter().map(|&v| closed.label(v)).collect();
            let feedback: Vec<[usize; 2]> = links.iter().map(|&e| one_based(e)).collect();
            json!({ "vertices": vertices, "feedback": feedback })
        })
        .collect();
    components.sort_by(|a, b| a["vertices"].to_string().cmp(&b["vertices"].to_string()));
    let violating: Vec<String> = report
        .condition_a
        .violating_states
        .iter()
        .map(|&x| closed.label(closed.state(x)))
        .collect();
    let cycles: Option<Vec<Vec<String>>> = report.condition_b_witness.as_ref().map(|w| {
        w.cycles
            .iter()
            .map(|c| c.iter().map(|&v| closed.label(v)).collect())
            .collect()
    });
    json!({
        "feasible": report.feasible,
        "condition_a": {
            "holds": report.condition_a.holds,
            "violating_states": violating,
            "feedback_components": components,
        },
        "condition_b": {
            "holds": cycles.is_some(),
            "cycles": cycles,
        },
    })
}

pub fn essentiality_value(report: &EssentialityReport) -> Value {
    let evidence: Vec<Value> = report
        .evidence
        .iter()
        .map(|e| {
            json!({
                "entry": one_based(e.entry),
                "breaks_condition_a": e.breaks_condition_a,
                "breaks_condition_b": e.breaks_condition_b,
            })
        })
        .collect();
    json!({
        "essential": report.essential,
        "feasible": report.feasible,
        "evidence": evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{check_feasible, is_essential};
    use crate::system::{
        build_closed_loop_digraph, InformationPattern, StructuralPattern, StructuralSystem,
    };

    fn e1() -> (StructuralSystem, InformationPattern) {
        let a = StructuralPattern::new(3, 3, [(1, 0), (2, 1)]).unwrap();
        (
            StructuralSystem::with_identity_io(a).unwrap(),
            InformationPattern::new(3, 3, [(0, 2)]).unwrap(),
        )
    }

    #[test]
    fn envelope_fields() {
        let r = Report::new("check", json!({ "feasible": true }));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], REPORT_SCHEMA);
        assert_eq!(v["version"], REPORT_VERSION);
        assert_eq!(v["command"], "check");
    }

    #[test]
    fn e1_feasibility_labels() {
        let (sys, k) = e1();
        let closed = build_closed_loop_digraph(&sys, &k).unwrap();
        let v = feasibility_value(&closed, &check_feasible(&sys, &k).unwrap());
        assert_eq!(v["feasible"], true);
        assert_eq!(
            v["condition_a"]["feedback_components"][0]["feedback"],
            json!([[1, 3]])
        );
        let cycles = v["condition_b"]["cycles"].as_array().unwrap();
        assert!(cycles
            .iter()
            .any(|c| c.as_array().unwrap().contains(&json!("y3"))));
    }

    #[test]
    fn essential_evidence_is_one_based() {
        let (sys, k) = e1();
        let v = essentiality_value(&is_essential(&sys, &k).unwrap());
        assert_eq!(v["essential"], true);
        assert_eq!(v["evidence"][0]["entry"], json!([1, 3]));
        assert_eq!(v["evidence"][0]["breaks_condition_a"], true);
        assert_eq!(v["evidence"][0]["breaks_condition_b"], true);
    }
}
