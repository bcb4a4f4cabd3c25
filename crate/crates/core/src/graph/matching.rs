use std::collections::VecDeque;

use serde::Serialize;

use super::{BipartiteGraph, GraphError};

/// A set of bipartite edges without shared endpoints, with the unmatched
/// vertices of both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    left_count: usize,
    right_count: usize,
    edges: Vec<(usize, usize)>,
    left_unmatched: Vec<usize>,
    right_unmatched: Vec<usize>,
}

impl Matching {
    /// Validates that `edges` share no endpoint and lie within the given sides.
    pub fn new<I>(left_count: usize, right_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        let mut left_used = vec![false; left_count];
        let mut right_used = vec![false; right_count];
        for &(l, r) in &edges {
            if l >= left_count || r >= right_count {
                return Err(GraphError::BipartiteOutOfRange {
                    left: l,
                    right: r,
                    left_count,
                    right_count,
                });
            }
            if left_used[l] || right_used[r] {
                return Err(GraphError::NotAMatching { left: l, right: r });
            }
            left_used[l] = true;
            right_used[r] = true;
        }
        Ok(Self {
            left_count,
            right_count,
            edges,
            left_unmatched: (0..left_count).filter(|&l| !left_used[l]).collect(),
            right_unmatched: (0..right_count).filter(|&r| !right_used[r]).collect(),
        })
    }

    pub fn empty(left_count: usize, right_count: usize) -> Self {
        Self::new(left_count, right_count, []).expect("empty matching is valid")
    }

    /// Matching edges sorted by left vertex.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn left_unmatched(&self) -> &[usize] {
        &self.left_unmatched
    }

    pub fn right_unmatched(&self) -> &[usize] {
        &self.right_unmatched
    }

    /// Right partner of each left vertex.
    pub fn left_to_right(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.left_count];
        for &(l, r) in &self.edges {
            out[l] = Some(r);
        }
        out
    }

    /// Left partner of each right vertex.
    pub fn right_to_left(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.right_count];
        for &(l, r) in &self.edges {
            out[r] = Some(l);
        }
        out
    }

    /// Returns the first matching edge absent from `graph`, if any.
    pub fn edge_outside(&self, graph: &BipartiteGraph) -> Option<(usize, usize)> {
        self.edges
            .iter()
            .copied()
            .find(|&(l, r)| !graph.has_edge(l, r))
    }
}

/// Maximum matching by Hopcroft-Karp.
///
/// Left vertices are scanned in increasing order and neighbours in increasing
/// order, so the result is a deterministic function of the input.
pub fn max_matching(graph: &BipartiteGraph) -> Matching {
    let n_left = graph.left_count();
    let n_right = graph.right_count();
    let mut pair_left: Vec<Option<usize>> = vec![None; n_left];
    let mut pair_right: Vec<Option<usize>> = vec![None; n_right];
    let mut dist = vec![usize::MAX; n_left];

    while layer(graph, &pair_left, &pair_right, &mut dist) {
        for u in 0..n_left {
            if pair_left[u].is_none() {
                augment(u, graph, &mut pair_left, &mut pair_right, &mut dist);
            }
        }
    }

    Matching::new(
        n_left,
        n_right,
        pair_left
            .iter()
            .enumerate()
            .filter_map(|(l, r)| r.map(|r| (l, r))),
    )
    .expect("hopcroft-karp yields a matching")
}

/// BFS layering from free left vertices; true if some free right vertex is reachable.
fn layer(
    graph: &BipartiteGraph,
    pair_left: &[Option<usize>],
    pair_right: &[Option<usize>],
    dist: &mut [usize],
) -> bool {
    let mut queue = VecDeque::new();
    for (u, p) in pair_left.iter().enumerate() {
        if p.is_none() {
            dist[u] = 0;
            queue.push_back(u);
        } else {
            dist[u] = usize::MAX;
        }
    }
    let mut found = false;
    while let Some(u) = queue.pop_front() {
        for &v in graph.neighbors(u) {
            match pair_right[v] {
                None => found = true,
                Some(w) if dist[w] == usize::MAX => {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
                Some(_) => {}
            }
        }
    }
    found
}

fn augment(
    u: usize,
    graph: &BipartiteGraph,
    pair_left: &mut [Option<usize>],
    pair_right: &mut [Option<usize>],
    dist: &mut [usize],
) -> bool {
    for &v in graph.neighbors(u) {
        let ok = match pair_right[v] {
            None => true,
            Some(w) => {
                dist[w] == dist[u].wrapping_add(1) && augment(w, graph, pair_left, pair_right, dist)
            }
        };
        if ok {
            pair_left[u] = Some(v);
            pair_right[v] = Some(u);
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}
