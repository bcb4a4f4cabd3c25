//! Structural patterns, structural systems, information patterns and the
//! digraphs built from them.
//!
//! Indices are 0-based here; documents and reports use 1-based indices.
//! Vertex naming follows the usual convention: the entry `(r, c)` of the
//! dynamics pattern is the edge `x_c -> x_r`, `(r, c)` of the input pattern is
//! `u_c -> x_r`, `(r, c)` of the output pattern is `x_c -> y_r`, and `(r, c)`
//! of an information pattern is the feedback link `y_c -> u_r`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use serde::Serialize;

use crate::graph::{BipartiteGraph, Digraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("entry ({row}, {col}) outside a {rows}x{cols} pattern")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("{what}: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    DimensionMismatch {
        what: &'static str,
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
}

/// Sparsity pattern: dimensions plus the set of non-zero coordinates.
/// Serializes with 1-based coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StructuralPattern {
    rows: usize,
    cols: usize,
    nonzeros: BTreeSet<(usize, usize)>,
}

impl Serialize for StructuralPattern {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("StructuralPattern", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("nonzeros", &self.one_based())?;
        st.end()
    }
}

impl StructuralPattern {
    pub fn new<I>(rows: usize, cols: usize, nonzeros: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let nonzeros: BTreeSet<(usize, usize)> = nonzeros.into_iter().collect();
        if let Some(&(row, col)) = nonzeros.iter().find(|&&(r, c)| r >= rows || c >= cols) {
            return Err(ModelError::OutOfBounds {
                row,
                col,
                rows,
                cols,
            });
        }
        Ok(Self {
            rows,
            cols,
            nonzeros,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            nonzeros: BTreeSet::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            nonzeros: (0..n).map(|i| (i, i)).collect(),
        }
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            nonzeros: (0..rows)
                .flat_map(|r| (0..cols).map(move |c| (r, c)))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Non-zero coordinates in row-major order.
    pub fn nonzeros(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.nonzeros.iter().copied()
    }

    pub fn nnz(&self) -> usize {
        self.nonzeros.len()
    }

    pub fn is_zero(&self) -> bool {
        self.nonzeros.is_empty()
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.nonzeros.contains(&(row, col))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    pub fn with_entry(&self, row: usize, col: usize) -> Result<Self, ModelError> {
        if row >= self.rows || col >= self.cols {
            return Err(ModelError::OutOfBounds {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = self.clone();
        out.nonzeros.insert((row, col));
        Ok(out)
    }

    pub fn without_entry(&self, row: usize, col: usize) -> Self {
        let mut out = self.clone();
        out.nonzeros.remove(&(row, col));
        out
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            nonzeros: self.nonzeros.iter().map(|&(r, c)| (c, r)).collect(),
        }
    }

    fn require_same_shape(&self, other: &Self, what: &'static str) -> Result<(), ModelError> {
        if self.shape() != other.shape() {
            return Err(ModelError::DimensionMismatch {
                what,
                expected_rows: self.rows,
                expected_cols: self.cols,
                rows: other.rows,
                cols: other.cols,
            });
        }
        Ok(())
    }

    /// `self <= other` entrywise.
    pub fn is_subpattern(&self, other: &Self) -> Result<bool, ModelError> {
        self.require_same_shape(other, "sub-pattern comparison")?;
        Ok(self.nonzeros.is_subset(&other.nonzeros))
    }

    /// `self < other`: the support of `self` is a proper subset of `other`'s.
    pub fn is_strict_subpattern(&self, other: &Self) -> Result<bool, ModelError> {
        Ok(self.is_subpattern(other)? && self.nonzeros.len() < other.nonzeros.len())
    }

    /// Entrywise OR.
    pub fn pattern_sum(&self, other: &Self) -> Result<Self, ModelError> {
        self.require_same_shape(other, "pattern sum")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            nonzeros: self.nonzeros.union(&other.nonzeros).copied().collect(),
        })
    }

    /// 1-based coordinates, the form used in documents and reports.
    pub fn one_based(&self) -> Vec<[usize; 2]> {
        self.nonzeros.iter().map(|&(r, c)| [r + 1, c + 1]).collect()
    }
}

impl fmt::Display for StructuralPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} {{", self.rows, self.cols)?;
        for (i, (r, c)) in self.nonzeros.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {})", r + 1, c + 1)?;
        }
        write!(f, "}}")
    }
}

/// Information pattern: a `p x m` pattern whose entry `(i, j)` lets input `i`
/// read output `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct InformationPattern(StructuralPattern);

impl InformationPattern {
    pub fn new<I>(inputs: usize, outputs: usize, entries: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        StructuralPattern::new(inputs, outputs, entries).map(Self)
    }

    pub fn zeros(inputs: usize, outputs: usize) -> Self {
        Self(StructuralPattern::zeros(inputs, outputs))
    }

    pub fn pattern(&self) -> &StructuralPattern {
        &self.0
    }

    pub fn into_pattern(self) -> StructuralPattern {
        self.0
    }

    pub fn with_entry(&self, row: usize, col: usize) -> Result<Self, ModelError> {
        self.0.with_entry(row, col).map(Self)
    }

    pub fn without_entry(&self, row: usize, col: usize) -> Self {
        Self(self.0.without_entry(row, col))
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn pattern_sum(&self, other: &Self) -> Result<Self, ModelError> {
        self.0.pattern_sum(&other.0).map(Self)
    }
}

impl From<StructuralPattern> for InformationPattern {
    fn from(pattern: StructuralPattern) -> Self {
        Self(pattern)
    }
}

impl Deref for InformationPattern {
    type Target = StructuralPattern;

    fn deref(&self) -> &StructuralPattern {
        &self.0
    }
}

impl fmt::Display for InformationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The triple of dynamics (`n x n`), input (`n x p`) and output (`m x n`) patterns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct StructuralSystem {
    a: StructuralPattern,
    b: StructuralPattern,
    c: StructuralPattern,
}

impl StructuralSystem {
    pub fn new(
        a: StructuralPattern,
        b: StructuralPattern,
        c: StructuralPattern,
    ) -> Result<Self, ModelError> {
        let n = a.rows();
        let mismatch = |what, er, ec, p: &StructuralPattern| ModelError::DimensionMismatch {
            what,
            expected_rows: er,
            expected_cols: ec,
            rows: p.rows(),
            cols: p.cols(),
        };
        if a.cols() != n {
            return Err(mismatch("dynamics pattern", n, n, &a));
        }
        if b.rows() != n {
            return Err(mismatch("input pattern", n, b.cols(), &b));
        }
        if c.cols() != n {
            return Err(mismatch("output pattern", c.rows(), n, &c));
        }
        Ok(Self { a, b, c })
    }

    /// The system with one dedicated input and one dedicated output per state.
    pub fn with_identity_io(a: StructuralPattern) -> Result<Self, ModelError> {
        let n = a.rows();
        Self::new(
            a,
            StructuralPattern::identity(n),
            StructuralPattern::identity(n),
        )
    }

    pub fn a(&self) -> &StructuralPattern {
        &self.a
    }

    pub fn b(&self) -> &StructuralPattern {
        &self.b
    }

    pub fn c(&self) -> &StructuralPattern {
        &self.c
    }

    /// Number of states.
    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// Number of inputs.
    pub fn p(&self) -> usize {
        self.b.cols()
    }

    /// Number of outputs.
    pub fn m(&self) -> usize {
        self.c.rows()
    }

    pub fn has_identity_io(&self) -> bool {
        self.b.is_identity() && self.c.is_identity()
    }

    pub fn check_pattern(&self, k: &InformationPattern) -> Result<(), ModelError> {
        if k.shape() != (self.p(), self.m()) {
            return Err(ModelError::DimensionMismatch {
                what: "information pattern",
                expected_rows: self.p(),
                expected_cols: self.m(),
                rows: k.rows(),
                cols: k.cols(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    State,
    Input,
    Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    StateToState,
    InputToState,
    StateToOutput,
    OutputToInput,
}

/// Digraph over states, inputs and outputs with typed vertices.
///
/// Vertex ids are laid out as states `0..n`, inputs `n..n+p`, outputs
/// `n+p..n+p+m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemDigraph {
    graph: Digraph,
    states: usize,
    inputs: usize,
    outputs: usize,
}

impl SystemDigraph {
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn input_count(&self) -> usize {
        self.inputs
    }

    pub fn output_count(&self) -> usize {
        self.outputs
    }

    pub fn state(&self, i: usize) -> usize {
        debug_assert!(i < self.states);
        i
    }

    pub fn input(&self, i: usize) -> usize {
        debug_assert!(i < self.inputs);
        self.states + i
    }

    pub fn output(&self, j: usize) -> usize {
        debug_assert!(j < self.outputs);
        self.states + self.inputs + j
    }

    /// Kind and local index of vertex `v`.
    pub fn vertex(&self, v: usize) -> (VertexKind, usize) {
        if v < self.states {
            (VertexKind::State, v)
        } else if v < self.states + self.inputs {
            (VertexKind::Input, v - self.states)
        } else {
            (VertexKind::Output, v - self.states - self.inputs)
        }
    }

    /// Name with 1-based index, e.g. `x3`, `u1`, `y2`.
    pub fn label(&self, v: usize) -> String {
        let (kind, i) = self.vertex(v);
        let prefix = match kind {
            VertexKind::State => 'x',
            VertexKind::Input => 'u',
            VertexKind::Output => 'y',
        };
        format!("{prefix}{}", i + 1)
    }

    pub fn edge_class(&self, tail: usize, head: usize) -> Option<EdgeClass> {
        match (self.vertex(tail).0, self.vertex(head).0) {
            (VertexKind::State, VertexKind::State) => Some(EdgeClass::StateToState),
            (VertexKind::Input, VertexKind::State) => Some(EdgeClass::InputToState),
            (VertexKind::State, VertexKind::Output) => Some(EdgeClass::StateToOutput),
            (VertexKind::Output, VertexKind::Input) => Some(EdgeClass::OutputToInput),
            _ => None,
        }
    }

    /// Edges of one class as local index pairs `(tail, head)`.
    pub fn edges_of_class(&self, class: EdgeClass) -> Vec<(usize, usize)> {
        self.graph
            .edges()
            .iter()
            .filter(|&&(t, h)| self.edge_class(t, h) == Some(class))
            .map(|&(t, h)| (self.vertex(t).1, self.vertex(h).1))
            .collect()
    }

    /// Feedback links as information-pattern coordinates `(input, output)`.
    pub fn feedback_entries(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .edges_of_class(EdgeClass::OutputToInput)
            .into_iter()
            .map(|(y, u)| (u, y))
            .collect();
        out.sort_unstable();
        out
    }

    /// Rebuilds `(A, B, C, K)` from the edge classes.
    pub fn read_back(
        &self,
    ) -> (
        StructuralPattern,
        StructuralPattern,
        StructuralPattern,
        StructuralPattern,
    ) {
        let (n, p, m) = (self.states, self.inputs, self.outputs);
        let flip = |v: Vec<(usize, usize)>| v.into_iter().map(|(t, h)| (h, t));
        let a = StructuralPattern::new(n, n, flip(self.edges_of_class(EdgeClass::StateToState)));
        let b = StructuralPattern::new(n, p, flip(self.edges_of_class(EdgeClass::InputToState)));
        let c = StructuralPattern::new(m, n, flip(self.edges_of_class(EdgeClass::StateToOutput)));
        let k = StructuralPattern::new(p, m, flip(self.edges_of_class(EdgeClass::OutputToInput)));
        (
            a.expect("in range"),
            b.expect("in range"),
            c.expect("in range"),
            k.expect("in range"),
        )
    }
}

fn state_edges(sys: &StructuralSystem) -> impl Iterator<Item = (usize, usize)> + '_ {
    sys.a().nonzeros().map(|(r, c)| (c, r))
}

/// `D(A)`: state vertices and state-to-state edges only.
pub fn build_state_digraph(sys: &StructuralSystem) -> SystemDigraph {
    SystemDigraph {
        graph: Digraph::new(sys.n(), state_edges(sys)).expect("pattern entries in range"),
        states: sys.n(),
        inputs: 0,
        outputs: 0,
    }
}

/// `D(A, B, K, C)`: the closed-loop system digraph.
pub fn build_closed_loop_digraph(
    sys: &StructuralSystem,
    k: &InformationPattern,
) -> Result<SystemDigraph, ModelError> {
    sys.check_pattern(k)?;
    let (n, p, m) = (sys.n(), sys.p(), sys.m());
    let input = |i: usize| n + i;
    let output = |j: usize| n + p + j;
    let edges = state_edges(sys)
        .chain(sys.b().nonzeros().map(|(x, u)| (input(u), x)))
        .chain(sys.c().nonzeros().map(|(y, x)| (x, output(y))))
        .chain(k.nonzeros().map(|(u, y)| (output(y), input(u))));
    Ok(SystemDigraph {
        graph: Digraph::new(n + p + m, edges).expect("pattern entries in range"),
        states: n,
        inputs: p,
        outputs: m,
    })
}

/// `B(A)`: left and right are both the state set; edge `(t, h)` for `x_t -> x_h`.
pub fn state_bipartite_graph(sys: &StructuralSystem) -> BipartiteGraph {
    BipartiteGraph::new(sys.n(), sys.n(), state_edges(sys)).expect("pattern entries in range")
}

pub fn is_strict_subpattern(
    k1: &StructuralPattern,
    k2: &StructuralPattern,
) -> Result<bool, ModelError> {
    k1.is_strict_subpattern(k2)
}

pub fn pattern_sum(
    k1: &StructuralPattern,
    k2: &StructuralPattern,
) -> Result<StructuralPattern, ModelError> {
    k1.pattern_sum(k2)
}
