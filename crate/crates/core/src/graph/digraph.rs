use serde::Serialize;

use super::GraphError;

/// Directed graph over vertices `0..vertex_count` with set semantics on edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Digraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    successors: Vec<Vec<usize>>,
}

impl Digraph {
    /// Builds a digraph, dropping duplicate edges. Endpoints must be in range.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
        if let Some(&(tail, head)) = edges
            .iter()
            .find(|&&(t, h)| t >= vertex_count || h >= vertex_count)
        {
            return Err(GraphError::VertexOutOfRange {
                tail,
                head,
                vertex_count,
            });
        }
        edges.sort_unstable();
        edges.dedup();

        let mut successors = vec![Vec::new(); vertex_count];
        for &(t, h) in &edges {
            successors[t].push(h);
        }

        Ok(Self {
            vertex_count,
            edges,
            successors,
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            edges: Vec::new(),
            successors: vec![Vec::new(); vertex_count],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Successors of `v` in increasing order.
    pub fn successors(&self, v: usize) -> &[usize] {
        &self.successors[v]
    }

    pub fn has_edge(&self, tail: usize, head: usize) -> bool {
        tail < self.vertex_count && self.successors[tail].binary_search(&head).is_ok()
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.vertex_count, self.edges.iter().map(|&(t, h)| (h, t)))
            .expect("reversal keeps endpoints in range")
    }

    /// Subgraph induced by `keep`; returns the graph and the map from new to old ids.
    pub fn induced(&self, keep: &[bool]) -> (Self, Vec<usize>) {
        let old_ids: Vec<usize> = (0..self.vertex_count).filter(|&v| keep[v]).collect();
        let mut new_id = vec![usize::MAX; self.vertex_count];
        for (new, &old) in old_ids.iter().enumerate() {
            new_id[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(t, h)| keep[t] && keep[h])
            .map(|&(t, h)| (new_id[t], new_id[h]));
        let graph = Self::new(old_ids.len(), edges).expect("induced edges stay in range");
        (graph, old_ids)
    }

    pub fn is_acyclic(&self) -> bool {
        let mut indegree = vec![0usize; self.vertex_count];
        for &(_, h) in &self.edges {
            indegree[h] += 1;
        }
        let mut stack: Vec<usize> = (0..self.vertex_count)
            .filter(|&v| indegree[v] == 0)
            .collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &w in &self.successors[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    stack.push(w);
                }
            }
        }
        seen == self.vertex_count
    }

    /// Vertices reachable from `start` (including `start`).
    pub fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.successors[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// Bipartite graph with left vertices `0..left_count` and right vertices
/// `0..right_count`; the two index spaces are disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adjacency: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new<I>(left_count: usize, right_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
        if let Some(&(left, right)) = edges
            .iter()
            .find(|&&(l, r)| l >= left_count || r >= right_count)
        {
            return Err(GraphError::BipartiteOutOfRange {
                left,
                right,
                left_count,
                right_count,
            });
        }
        edges.sort_unstable();
        edges.dedup();
        let mut adjacency = vec![Vec::new(); left_count];
        for &(l, r) in &edges {
            adjacency[l].push(r);
        }
        Ok(Self {
            left_count,
            right_count,
            edges,
            adjacency,
        })
    }

    /// The bipartite graph `B(V, V, E)` associated with a digraph.
    pub fn from_digraph(graph: &Digraph) -> Self {
        Self::new(
            graph.vertex_count(),
            graph.vertex_count(),
            graph.edges().iter().copied(),
        )
        .expect("digraph edges are in range")
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, left: usize) -> &[usize] {
        &self.adjacency[left]
    }

    pub fn has_edge(&self, left: usize, right: usize) -> bool {
        left < self.left_count && self.adjacency[left].binary_search(&right).is_ok()
    }
}
