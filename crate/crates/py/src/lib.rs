//! Python bindings: `import spack_py`.
//!
//! Colorings cross the boundary as plain dicts in the coloring JSON schema.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use spack_core::colorer::{color_graph, ColorError, ColorOptions};
use spack_core::exact::{self, ChiRho, DecisionStatus, DEFAULT_NODE_BUDGET};
use spack_core::io::{self, Family, FamilyName};
use spack_core::verify::{derive_subdivision_coloring, PackingColoring, PackingSequence};
use spack_core::weights;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn from_py(py: Python<'_>, coloring: &Bound<'_, PyAny>) -> PyResult<PackingColoring> {
    let text: String = py
        .import("json")?
        .call_method1("dumps", (coloring,))?
        .extract()?;
    PackingColoring::from_json(&text).map_err(value_error)
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "spack_py", skip_from_py_object)]
#[derive(Clone)]
pub struct PyGraph {
    inner: spack_core::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = spack_core::Graph::new(n, edges).map_err(value_error)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        let inner = io::parse_graph6(text.trim().as_bytes()).map_err(value_error)?;
        Ok(Self { inner })
    }

    fn to_graph6(&self) -> String {
        io::encode_graph6(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.vertex_count() {
            return Err(value_error(format!("no vertex {v}")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn is_cubic(&self) -> bool {
        self.inner.is_cubic()
    }

    fn subdivide(&self) -> Self {
        Self {
            inner: self.inner.subdivide().graph,
        }
    }

    /// `1 + distance to the nearest vertex of degree at most 2`, per vertex.
    fn weights(&self) -> PyResult<Vec<u32>> {
        let w = weights::compute_weights(&self.inner).map_err(value_error)?;
        Ok(w.as_slice().to_vec())
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, m={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// (1,1,2,2)-packing coloring; raises ValueError on cubic components without fallback.
#[pyfunction]
#[pyo3(signature = (graph, fallback_exact = false, exact_budget = DEFAULT_NODE_BUDGET))]
fn color<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    fallback_exact: bool,
    exact_budget: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let options = ColorOptions {
        fallback_exact,
        exact_budget,
        ..ColorOptions::default()
    };
    match color_graph(&graph.inner, &options) {
        Ok(run) => to_py(py, &run.coloring),
        Err(ColorError::CubicComponents(failures)) => {
            let detail: Vec<String> = failures
                .iter()
                .map(|f| format!("{:?} ({})", f.vertices, f.reason))
                .collect();
            Err(value_error(format!(
                "cubic components not colored: {}",
                detail.join(", ")
            )))
        }
        Err(e) => Err(value_error(e)),
    }
}

/// Problems with `coloring` as a list of dicts; empty when it is valid.
#[pyfunction]
fn verify<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    coloring: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let c = from_py(py, coloring)?;
    let problems = match spack_core::verify::verify(&graph.inner, &c) {
        Ok(()) => Vec::new(),
        Err(report) => report.problems(),
    };
    to_py(py, &problems)
}

/// `("SAT", coloring)`, `("UNSAT", None)` or `("BUDGET", None)`.
#[pyfunction]
#[pyo3(signature = (graph, seq, budget = DEFAULT_NODE_BUDGET))]
fn decide<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    seq: Vec<u32>,
    budget: u64,
) -> PyResult<(&'static str, Option<Bound<'py, PyAny>>)> {
    let seq = PackingSequence::new(seq).map_err(value_error)?;
    Ok(match exact::decide(&graph.inner, &seq, budget).status {
        DecisionStatus::Sat(c) => ("SAT", Some(to_py(py, &c)?)),
        DecisionStatus::Unsat => ("UNSAT", None),
        DecisionStatus::BudgetExceeded => ("BUDGET", None),
    })
}

/// Packing chromatic number if it is at most `max_k` and found within budget.
#[pyfunction]
#[pyo3(signature = (graph, max_k, budget = DEFAULT_NODE_BUDGET))]
fn chi_rho(graph: &PyGraph, max_k: u32, budget: u64) -> Option<u32> {
    match exact::chi_rho(&graph.inner, max_k, budget) {
        ChiRho::Known { k, .. } => Some(k),
        ChiRho::Unknown => None,
    }
}

/// The subdivision and the (1,2,3,4,5) coloring lifted from a (1,1,2,2) coloring.
#[pyfunction]
fn subdivide_coloring<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    coloring: &Bound<'py, PyAny>,
) -> PyResult<(PyGraph, Bound<'py, PyAny>)> {
    let c = from_py(py, coloring)?;
    let (sub, derived) = derive_subdivision_coloring(&graph.inner, &c).map_err(value_error)?;
    Ok((PyGraph { inner: sub.graph }, to_py(py, &derived)?))
}

#[pyfunction]
#[pyo3(signature = (family, n = 0, m = None, seed = 0, non_cubic = false))]
fn generate(
    family: &str,
    n: usize,
    m: Option<usize>,
    seed: u64,
    non_cubic: bool,
) -> PyResult<PyGraph> {
    let name = family.parse::<FamilyName>().map_err(value_error)?;
    let family = Family::from_name(name, n, m, non_cubic);
    let inner = io::generate(family, seed).map_err(value_error)?;
    Ok(PyGraph { inner })
}

#[pymodule]
fn spack_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(color, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(chi_rho, m)?)?;
    m.add_function(wrap_pyfunction!(subdivide_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    Ok(())
}
