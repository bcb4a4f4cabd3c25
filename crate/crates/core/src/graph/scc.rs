use std::collections::BTreeSet;

use serde::Serialize;

use super::{BipartiteGraph, Digraph, GraphError};

/// Strongly connected components of a digraph together with the condensation
/// DAG and its linked-SCC classification.
///
/// Component ids follow Tarjan's completion order, which is a reverse
/// topological order of the condensation: every DAG edge `(s, t)` has `s > t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CondensationDag {
    scc_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    dag_edges: BTreeSet<(usize, usize)>,
    non_top: Vec<usize>,
    non_bottom: Vec<usize>,
}

impl CondensationDag {
    pub fn scc_count(&self) -> usize {
        self.members.len()
    }

    /// Component id of vertex `v`.
    pub fn scc_of(&self, v: usize) -> usize {
        self.scc_of[v]
    }

    pub fn membership(&self) -> &[usize] {
        &self.scc_of
    }

    /// Vertices of component `scc`, sorted.
    pub fn members(&self, scc: usize) -> &[usize] {
        &self.members[scc]
    }

    pub fn dag_edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.dag_edges
    }

    /// Components without incoming DAG edges, in increasing id order.
    pub fn non_top(&self) -> &[usize] {
        &self.non_top
    }

    /// Components without outgoing DAG edges, in increasing id order.
    pub fn non_bottom(&self) -> &[usize] {
        &self.non_bottom
    }

    pub fn beta_top(&self) -> usize {
        self.non_top.len()
    }

    pub fn beta_bottom(&self) -> usize {
        self.non_bottom.len()
    }

    pub fn same_scc(&self, u: usize, v: usize) -> bool {
        self.scc_of[u] == self.scc_of[v]
    }

    /// Components reachable from `scc` in the condensation (reflexive).
    pub fn reachable_from(&self, scc: usize) -> Vec<bool> {
        let mut succ = vec![Vec::new(); self.members.len()];
        for &(s, t) in &self.dag_edges {
            succ[s].push(t);
        }
        let mut seen = vec![false; self.members.len()];
        let mut stack = vec![scc];
        seen[scc] = true;
        while let Some(c) = stack.pop() {
            for &d in &succ[c] {
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        seen
    }
}

/// Tarjan's algorithm, iterative so deep graphs do not exhaust the call stack.
pub fn scc_decompose(graph: &Digraph) -> CondensationDag {
    const UNVISITED: usize = usize::MAX;
    let n = graph.vertex_count();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut scc_of = vec![UNVISITED; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut next_index = 0usize;

    // (vertex, position in its successor list)
    let mut call_stack: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call_stack.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call_stack.last_mut() {
            let succ = graph.successors(v);
            if *pos < succ.len() {
                let w = succ[*pos];
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call_stack.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }

            call_stack.pop();
            if let Some(&(parent, _)) = call_stack.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let id = members.len();
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    scc_of[w] = id;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                members.push(comp);
            }
        }
    }

    let dag_edges: BTreeSet<(usize, usize)> = graph
        .edges()
        .iter()
        .map(|&(t, h)| (scc_of[t], scc_of[h]))
        .filter(|(s, t)| s != t)
        .collect();

    let count = members.len();
    let mut has_in = vec![false; count];
    let mut has_out = vec![false; count];
    for &(s, t) in &dag_edges {
        has_out[s] = true;
        has_in[t] = true;
    }
    let non_top = (0..count).filter(|&c| !has_in[c]).collect();
    let non_bottom = (0..count).filter(|&c| !has_out[c]).collect();

    CondensationDag {
        scc_of,
        members,
        dag_edges,
        non_top,
        non_bottom,
    }
}

/// Reachability between two lists of components.
///
/// Left vertex `a` stands for `sources[a]`, right vertex `b` for `targets[b]`;
/// the edge `(a, b)` exists iff `targets[b]` is reachable from `sources[a]`
/// (every component reaches itself).
pub fn scc_reachability(
    dag: &CondensationDag,
    sources: &[usize],
    targets: &[usize],
) -> Result<BipartiteGraph, GraphError> {
    let count = dag.scc_count();
    if let Some(&bad) = sources.iter().chain(targets).find(|&&c| c >= count) {
        return Err(GraphError::SccOutOfRange { scc: bad, count });
    }
    let mut edges = Vec::new();
    for (a, &s) in sources.iter().enumerate() {
        let reach = dag.reachable_from(s);
        for (b, &t) in targets.iter().enumerate() {
            if reach[t] {
                edges.push((a, b));
            }
        }
    }
    BipartiteGraph::new(sources.len(), targets.len(), edges)
}
