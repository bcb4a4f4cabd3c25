use std::fmt::Write as _;
use std::path::Path;

use super::IoError;
use crate::graph::scc_decompose;
use crate::system::{EdgeClass, SystemDigraph, VertexKind};

fn node_style(kind: VertexKind) -> &'static str {
    match kind {
        VertexKind::State => "shape=circle, color=black",
        VertexKind::Input => "shape=box, color=blue, fontcolor=blue",
        VertexKind::Output => "shape=diamond, color=green4, fontcolor=green4",
    }
}

/// Graphviz rendering: multi-vertex SCCs become clusters, vertex classes
/// get their own shape and colour, and feedback links are drawn bold red.
pub fn to_dot(digraph: &SystemDigraph) -> String {
    let g = digraph.graph();
    let dag = scc_decompose(g);
    let mut out = String::from("digraph system {\n");
    if g.vertex_count() > 0 {
        out.push_str("  rankdir=LR;\n");
    }
    let node = |out: &mut String, v: usize, indent: &str| {
        let _ = writeln!(
            out,
            "{indent}{} [{}];",
            digraph.label(v),
            node_style(digraph.vertex(v).0)
        );
    };

    // clusters in order of their smallest vertex
    let mut sccs: Vec<usize> = (0..dag.scc_count()).collect();
    sccs.sort_by_key(|&s| dag.members(s)[0]);
    let mut cluster = 0;
    for s in sccs {
        let members = dag.members(s);
        if members.len() == 1 {
            node(&mut out, members[0], "  ");
            continue;
        }
        cluster += 1;
        let _ = writeln!(out, "  subgraph cluster_{cluster} {{");
        let _ = writeln!(out, "    label=\"SCC {cluster}\";");
        out.push_str("    style=dashed;\n");
        for &v in members {
            node(&mut out, v, "    ");
        }
        out.push_str("  }\n");
    }

    for &(tail, head) in g.edges() {
        let _ = write!(out, "  {} -> {}", digraph.label(tail), digraph.label(head));
        if digraph.edge_class(tail, head) == Some(EdgeClass::OutputToInput) {
            out.push_str(" [color=red, style=bold]");
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}

pub fn export_dot(digraph: &SystemDigraph, path: impl AsRef<Path>) -> Result<(), IoError> {
    super::document::write(path.as_ref(), &to_dot(digraph))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{
        build_closed_loop_digraph, build_state_digraph, InformationPattern, StructuralPattern,
        StructuralSystem,
    };

    #[test]
    fn empty_graph() {
        let sys = StructuralSystem::with_identity_io(StructuralPattern::zeros(0, 0)).unwrap();
        assert_eq!(to_dot(&build_state_digraph(&sys)), "digraph system {\n}\n");
    }

    #[test]
    fn single_vertex() {
        let sys = StructuralSystem::new(
            StructuralPattern::zeros(1, 1),
            StructuralPattern::zeros(1, 0),
            StructuralPattern::zeros(0, 1),
        )
        .unwrap();
        let dot = to_dot(&build_state_digraph(&sys));
        assert_eq!(dot.matches(" [shape=").count(), 1);
        assert!(dot.contains("x1 [shape=circle"));
    }

    #[test]
    fn e1_closed_loop_golden() {
        let a = StructuralPattern::new(3, 3, [(1, 0), (2, 1)]).unwrap();
        let sys = StructuralSystem::with_identity_io(a).unwrap();
        let k = InformationPattern::new(3, 3, [(0, 2)]).unwrap();
        let dot = to_dot(&build_closed_loop_digraph(&sys, &k).unwrap());
        assert_eq!(dot, include_str!("../../tests/data/e1_closed_loop.dot"));
    }
}
