use serde::Serialize;

use super::{max_matching, BipartiteGraph, Digraph, GraphError, Matching};

/// Vertex-disjoint cycles and elementary paths spanning a digraph, induced by
/// a matching of its associated bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathCycleDecomposition {
    /// Each cycle lists its vertices in traversal order, starting at the smallest.
    pub cycles: Vec<Vec<usize>>,
    /// Each path runs from a right-unmatched to a left-unmatched vertex.
    /// An isolated vertex is a path with no edges.
    pub paths: Vec<Vec<usize>>,
}

/// Follows matched successors: a matching edge `(t, h)` is the digraph edge `t -> h`.
pub fn matching_decomposition(
    state_graph: &Digraph,
    matching: &Matching,
) -> Result<PathCycleDecomposition, GraphError> {
    let n = state_graph.vertex_count();
    if matching.left_count() != n || matching.right_count() != n {
        return Err(GraphError::MatchingShape {
            left: matching.left_count(),
            right: matching.right_count(),
            vertex_count: n,
        });
    }
    if let Some((tail, head)) = matching
        .edges()
        .iter()
        .copied()
        .find(|&(t, h)| !state_graph.has_edge(t, h))
    {
        return Err(GraphError::EdgeNotInGraph { tail, head });
    }

    let next = matching.left_to_right();
    let mut visited = vec![false; n];
    let mut paths = Vec::new();
    for &start in matching.right_unmatched() {
        let mut path = vec![start];
        visited[start] = true;
        let mut v = start;
        while let Some(w) = next[v] {
            visited[w] = true;
            path.push(w);
            v = w;
        }
        paths.push(path);
    }

    let mut cycles = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut v = next[start].expect("vertex off every path lies on a cycle");
        while v != start {
            visited[v] = true;
            cycle.push(v);
            v = next[v].expect("vertex off every path lies on a cycle");
        }
        cycles.push(cycle);
    }

    Ok(PathCycleDecomposition { cycles, paths })
}

/// Disjoint cycles covering every vertex not flagged `optional`.
///
/// Reduces to a perfect matching of the associated bipartite graph augmented
/// with a loop `(v, v)` on every optional vertex; a matched artificial loop
/// means the vertex is left out. Returns the non-trivial cycles, each rotated
/// to start at its smallest vertex and sorted.
pub fn disjoint_cycle_cover(graph: &Digraph, optional: &[bool]) -> Option<Vec<Vec<usize>>> {
    let n = graph.vertex_count();
    let artificial = |v: usize| optional[v] && !graph.has_edge(v, v);
    let edges = graph
        .edges()
        .iter()
        .copied()
        .chain((0..n).filter(|&v| artificial(v)).map(|v| (v, v)));
    let bipartite = BipartiteGraph::new(n, n, edges).expect("edges in range");
    let matching = max_matching(&bipartite);
    if matching.size() != n {
        return None;
    }

    let next = matching.left_to_right();
    let mut visited = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let first = next[start].expect("perfect matching");
        if first == start && artificial(start) {
            visited[start] = true;
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut v = first;
        while v != start {
            visited[v] = true;
            cycle.push(v);
            v = next[v].expect("perfect matching");
        }
        cycles.push(cycle);
    }
    Some(cycles)
}
