//! Python bindings. Patterns cross the boundary as lists of 1-based
//! `(row, col)` pairs; reports come back as plain dicts.

use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;

use infopat_core::analysis;
use infopat_core::design::{self, DesignError, SplitVariant};
use infopat_core::graph::Digraph;
use infopat_core::io::{self, IoError};
use infopat_core::system::{
    build_closed_loop_digraph, build_state_digraph, InformationPattern, ModelError,
    StructuralPattern, StructuralSystem,
};
use infopat_core::validation::{self, Criterion, NumericError, ValidationError};

type Pairs = Vec<(usize, usize)>;
type Split = (Vec<usize>, Vec<usize>, Pairs);

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn model_err(e: ModelError) -> PyErr {
    value_err(e)
}

fn design_err(e: DesignError) -> PyErr {
    match e {
        DesignError::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => value_err(e),
    }
}

fn validation_err(e: ValidationError) -> PyErr {
    value_err(e)
}

fn numeric_err(e: NumericError) -> PyErr {
    match e {
        NumericError::EigenFailure => PyRuntimeError::new_err(e.to_string()),
        _ => value_err(e),
    }
}

fn io_err(e: IoError) -> PyErr {
    match e {
        IoError::File { .. } => PyOSError::new_err(e.to_string()),
        _ => value_err(e),
    }
}

fn zero_based(rows: usize, cols: usize, pairs: &[(usize, usize)]) -> PyResult<StructuralPattern> {
    let mut entries = Vec::with_capacity(pairs.len());
    for &(r, c) in pairs {
        if r == 0 || c == 0 {
            return Err(value_err(format!("({r}, {c}): indices are 1-based")));
        }
        entries.push((r - 1, c - 1));
    }
    StructuralPattern::new(rows, cols, entries).map_err(model_err)
}

fn pairs(p: &StructuralPattern) -> Pairs {
    p.nonzeros().map(|(r, c)| (r + 1, c + 1)).collect()
}

fn json_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_bound_py_any(py)?,
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_bound_py_any(py)?,
            (None, Some(i)) => i.into_bound_py_any(py)?,
            _ => n.as_f64().unwrap_or(f64::NAN).into_bound_py_any(py)?,
        },
        Value::String(s) => s.into_bound_py_any(py)?,
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

/// Structural system `(A, B, C)`. Omitting `b` and `c` gives one dedicated
/// input and output per state.
#[pyclass(name = "System", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PySystem {
    inner: StructuralSystem,
}

#[pymethods]
impl PySystem {
    #[new]
    #[pyo3(signature = (n, a, b=None, c=None, p=None, m=None))]
    fn new(
        n: usize,
        a: Pairs,
        b: Option<Pairs>,
        c: Option<Pairs>,
        p: Option<usize>,
        m: Option<usize>,
    ) -> PyResult<Self> {
        let a = zero_based(n, n, &a)?;
        let inner = match (b, c) {
            (None, None) if p.unwrap_or(n) == n && m.unwrap_or(n) == n => {
                StructuralSystem::with_identity_io(a).map_err(model_err)?
            }
            (b, c) => {
                let p = p.ok_or_else(|| value_err("p is required when b is given"))?;
                let m = m.ok_or_else(|| value_err("m is required when c is given"))?;
                let b = zero_based(n, p, &b.unwrap_or_default())?;
                let c = zero_based(m, n, &c.unwrap_or_default())?;
                StructuralSystem::new(a, b, c).map_err(model_err)?
            }
        };
        Ok(Self { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn p(&self) -> usize {
        self.inner.p()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn a(&self) -> Pairs {
        pairs(self.inner.a())
    }

    #[getter]
    fn b(&self) -> Pairs {
        pairs(self.inner.b())
    }

    #[getter]
    fn c(&self) -> Pairs {
        pairs(self.inner.c())
    }

    fn has_identity_io(&self) -> bool {
        self.inner.has_identity_io()
    }

    fn __repr__(&self) -> String {
        format!(
            "System(n={}, p={}, m={}, a={:?})",
            self.inner.n(),
            self.inner.p(),
            self.inner.m(),
            pairs(self.inner.a())
        )
    }
}

impl PySystem {
    fn pattern(&self, k: &[(usize, usize)]) -> PyResult<InformationPattern> {
        Ok(zero_based(self.inner.p(), self.inner.m(), k)?.into())
    }
}

#[pyfunction]
fn is_feasible(sys: &PySystem, k: Pairs) -> PyResult<bool> {
    analysis::is_feasible(&sys.inner, &sys.pattern(&k)?).map_err(model_err)
}

/// Verdict with the component and cycle-cover witnesses.
#[pyfunction]
fn check_feasible<'py>(py: Python<'py>, sys: &PySystem, k: Pairs) -> PyResult<Bound<'py, PyAny>> {
    let k = sys.pattern(&k)?;
    let closed = build_closed_loop_digraph(&sys.inner, &k).map_err(model_err)?;
    let report = analysis::check_feasible(&sys.inner, &k).map_err(model_err)?;
    json_to_py(py, &io::feasibility_value(&closed, &report))
}

#[pyfunction]
fn is_essential<'py>(py: Python<'py>, sys: &PySystem, k: Pairs) -> PyResult<Bound<'py, PyAny>> {
    let report = analysis::is_essential(&sys.inner, &sys.pattern(&k)?).map_err(model_err)?;
    json_to_py(py, &io::essentiality_value(&report))
}

fn plant(sys: &PySystem) -> PyResult<&StructuralPattern> {
    if sys.inner.has_identity_io() {
        Ok(sys.inner.a())
    } else {
        Err(design_err(DesignError::RequiresIdentityIo))
    }
}

#[pyfunction]
fn design_condition_a(sys: &PySystem) -> PyResult<Pairs> {
    let k = design::design_condition_a_sparsest(plant(sys)?).map_err(design_err)?;
    Ok(pairs(k.pattern()))
}

#[pyfunction]
fn design_condition_b(sys: &PySystem) -> PyResult<Pairs> {
    let k = design::design_condition_b_sparsest(plant(sys)?).map_err(design_err)?;
    Ok(pairs(k.pattern()))
}

#[pyfunction]
fn design_feasible_essential(sys: &PySystem) -> PyResult<Pairs> {
    let k = design::design_feasible_essential(plant(sys)?).map_err(design_err)?;
    Ok(pairs(k.pattern()))
}

fn index(v: usize) -> PyResult<usize> {
    v.checked_sub(1)
        .ok_or_else(|| value_err("indices are 1-based"))
}

#[pyfunction]
fn bisect_feedback(
    sys: &PySystem,
    k: Pairs,
    entry: (usize, usize),
    target: (usize, usize),
) -> PyResult<Pairs> {
    let out = design::bisect_feedback(
        &sys.inner,
        &sys.pattern(&k)?,
        (index(entry.0)?, index(entry.1)?),
        (index(target.0)?, index(target.1)?),
    )
    .map_err(design_err)?;
    Ok(pairs(out.pattern()))
}

#[pyfunction]
#[pyo3(signature = (sys, k, cycle, at, as_stated=false))]
fn split_cycle(
    sys: &PySystem,
    k: Pairs,
    cycle: Vec<usize>,
    at: usize,
    as_stated: bool,
) -> PyResult<Pairs> {
    let cycle = cycle.into_iter().map(index).collect::<PyResult<Vec<_>>>()?;
    let variant = if as_stated {
        SplitVariant::Literal
    } else {
        SplitVariant::CycleClosing
    };
    let out = design::split_cycle(&sys.inner, &sys.pattern(&k)?, &cycle, at, variant)
        .map_err(design_err)?;
    Ok(pairs(out.pattern()))
}

#[pyfunction]
fn enumerate_essential_family(sys: &PySystem, k: Pairs, depth: usize) -> PyResult<Vec<Pairs>> {
    let family = design::enumerate_essential_family(&sys.inner, &sys.pattern(&k)?, depth)
        .map_err(design_err)?;
    Ok(family.iter().map(|k| pairs(k.pattern())).collect())
}

#[pyfunction]
#[pyo3(signature = (sys, cap=validation::DEFAULT_ENUMERATION_CAP))]
fn essential_bruteforce(sys: &PySystem, cap: usize) -> PyResult<Vec<Pairs>> {
    let found = validation::essential_bruteforce(&sys.inner, cap).map_err(validation_err)?;
    Ok(found.iter().map(|k| pairs(k.pattern())).collect())
}

/// `(count, patterns)` of the sparsest patterns meeting `criterion`
/// (`"feasible"`, `"condition_a"` or `"condition_b"`), or `None`.
#[pyfunction]
#[pyo3(signature = (sys, criterion="feasible", cap=validation::DEFAULT_ENUMERATION_CAP))]
fn sparsest_bruteforce(
    sys: &PySystem,
    criterion: &str,
    cap: usize,
) -> PyResult<Option<(usize, Vec<Pairs>)>> {
    let criterion = match criterion {
        "feasible" => Criterion::Feasible,
        "condition_a" => Criterion::ConditionA,
        "condition_b" => Criterion::ConditionB,
        other => return Err(value_err(format!("unknown criterion `{other}`"))),
    };
    let found =
        validation::sparsest_bruteforce(&sys.inner, criterion, cap).map_err(validation_err)?;
    Ok(found.map(|s| {
        (
            s.count,
            s.patterns.iter().map(|k| pairs(k.pattern())).collect(),
        )
    }))
}

#[pyfunction]
#[pyo3(signature = (sys, k, seed, trials=validation::DEFAULT_TRIALS, tol=validation::DEFAULT_TOLERANCE))]
fn cross_validate<'py>(
    py: Python<'py>,
    sys: &PySystem,
    k: Pairs,
    seed: u64,
    trials: usize,
    tol: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let cv = validation::cross_validate(&sys.inner, &sys.pattern(&k)?, trials, tol, seed)
        .map_err(numeric_err)?;
    json_to_py(py, &serde_json::to_value(&cv).map_err(value_err)?)
}

/// Two-block partition of the DAG on `n` vertices with 1-based `arcs`, as
/// `(gamma1, gamma2, pattern)`, or `None`.
#[pyfunction]
#[pyo3(signature = (n, arcs, cap=validation::DEFAULT_DECOMPOSITION_CAP))]
fn solve_decomposition(n: usize, arcs: Pairs, cap: usize) -> PyResult<Option<Split>> {
    let arcs = arcs
        .into_iter()
        .map(|(a, b)| Ok((index(a)?, index(b)?)))
        .collect::<PyResult<Vec<_>>>()?;
    let dag = Digraph::new(n, arcs).map_err(value_err)?;
    let found = validation::solve_decomposition_via_patterns(&dag, cap).map_err(validation_err)?;
    let one = |v: &[usize]| v.iter().map(|x| x + 1).collect::<Vec<_>>();
    Ok(found.map(|s| {
        (
            one(&s.partition.gamma1),
            one(&s.partition.gamma2),
            pairs(s.pattern.pattern()),
        )
    }))
}

/// Reads a system document; returns `(system, pattern or None)`.
#[pyfunction]
fn load_system(path: &str) -> PyResult<(PySystem, Option<Pairs>)> {
    let (inner, k) = io::load_system(path).map_err(io_err)?;
    Ok((PySystem { inner }, k.map(|k| pairs(k.pattern()))))
}

#[pyfunction]
#[pyo3(signature = (path, sys, k=None))]
fn save_system(path: &str, sys: &PySystem, k: Option<Pairs>) -> PyResult<()> {
    let k = k.map(|k| sys.pattern(&k)).transpose()?;
    io::save_system(path, &sys.inner, k.as_ref()).map_err(io_err)
}

/// Graphviz text of the closed loop, or of the open loop when `k` is `None`.
#[pyfunction]
#[pyo3(signature = (sys, k=None))]
fn to_dot(sys: &PySystem, k: Option<Pairs>) -> PyResult<String> {
    Ok(match k {
        Some(k) => {
            let k = sys.pattern(&k)?;
            io::to_dot(&build_closed_loop_digraph(&sys.inner, &k).map_err(model_err)?)
        }
        None => io::to_dot(&build_state_digraph(&sys.inner)),
    })
}

#[pymodule]
fn infopat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySystem>()?;
    m.add_function(wrap_pyfunction!(is_feasible, m)?)?;
    m.add_function(wrap_pyfunction!(check_feasible, m)?)?;
    m.add_function(wrap_pyfunction!(is_essential, m)?)?;
    m.add_function(wrap_pyfunction!(design_condition_a, m)?)?;
    m.add_function(wrap_pyfunction!(design_condition_b, m)?)?;
    m.add_function(wrap_pyfunction!(design_feasible_essential, m)?)?;
    m.add_function(wrap_pyfunction!(bisect_feedback, m)?)?;
    m.add_function(wrap_pyfunction!(split_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_essential_family, m)?)?;
    m.add_function(wrap_pyfunction!(essential_bruteforce, m)?)?;
    m.add_function(wrap_pyfunction!(sparsest_bruteforce, m)?)?;
    m.add_function(wrap_pyfunction!(cross_validate, m)?)?;
    m.add_function(wrap_pyfunction!(solve_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(load_system, m)?)?;
    m.add_function(wrap_pyfunction!(save_system, m)?)?;
    m.add_function(wrap_pyfunction!(to_dot, m)?)?;
    Ok(())
}
