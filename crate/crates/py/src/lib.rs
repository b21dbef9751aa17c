//! Python bindings: graphs, property checks, games, trial batches, bias
//! scans, exact solvers and box games.
//!
//! Records cross the boundary as plain dicts (via their JSON form).

use std::collections::HashMap;
use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use gnpgames::boxes::{box_threshold, boxmaker_vs_optimal_breaker, solve_box_exact, BoxState};
use gnpgames::game::{GameSpec, Role};
use gnpgames::graph::{sample_gnp, GnpParams, Graph as CoreGraph};
use gnpgames::harness::{self, Config};
use gnpgames::oracle::solve_exact;
use gnpgames::props;

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<PyObject> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import_bound("json")?.call_method1("loads", (text,))?.unbind())
}

/// An undirected simple graph on vertices `0..n`.
#[pyclass(name = "Graph", frozen)]
#[derive(Clone)]
pub struct PyGraph {
    inner: Arc<CoreGraph>,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let g = CoreGraph::from_edges(n, edges).map_err(value_err)?;
        Ok(PyGraph { inner: Arc::new(g) })
    }

    /// Seeded G(n,p).
    #[staticmethod]
    fn gnp(n: usize, p: f64, seed: u64) -> PyResult<Self> {
        let params = GnpParams::new(n, p, seed).map_err(value_err)?;
        let g = sample_gnp(&params).map_err(value_err)?;
        Ok(PyGraph { inner: Arc::new(g) })
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph { inner: Arc::new(CoreGraph::complete(n)) }
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: Arc::new(CoreGraph::from_text(text).map_err(value_err)?) })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().iter().map(|e| (e.u(), e.v())).collect()
    }

    fn degrees(&self) -> Vec<usize> {
        self.inner.degrees()
    }

    fn __len__(&self) -> usize {
        self.inner.edge_count()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.edge_count())
    }

    fn is_connected(&self) -> bool {
        props::is_connected(&self.inner)
    }

    fn is_k_connected(&self, k: usize) -> bool {
        props::is_k_connected(&self.inner, k)
    }

    fn has_perfect_matching(&self) -> bool {
        props::has_perfect_matching(&self.inner)
    }

    fn is_hamiltonian(&self) -> bool {
        props::is_hamiltonian(&self.inner)
    }

    /// `None` when every `U` with `|U| <= r` expands by `c`, else a violating set.
    fn expander_violation(&self, r: usize, c: f64) -> PyResult<Option<Vec<usize>>> {
        let w = props::is_expander(&self.inner, r, c).map_err(value_err)?;
        Ok(w.violating_set)
    }

    /// Non-edges that make the graph Hamiltonian or lengthen its longest path.
    fn boosters(&self) -> PyResult<Vec<(usize, usize)>> {
        let r = props::booster_set(&self.inner).map_err(value_err)?;
        Ok(r.boosters.iter().map(|e| (e.u(), e.v())).collect())
    }

    /// Random-graph property audit of this graph as a G(n,p) sample.
    #[pyo3(signature = (p, seed=0, samples_per_bucket=10_000))]
    fn audit(&self, py: Python<'_>, p: f64, seed: u64, samples_per_bucket: usize) -> PyResult<PyObject> {
        let knobs = props::AuditKnobs { seed, samples_per_bucket, ..props::AuditKnobs::default() };
        to_py(py, &props::audit_gnp_properties(&self.inner, p, &knobs))
    }
}

fn config_from(settings: Option<HashMap<String, String>>) -> PyResult<Config> {
    let mut pairs: Vec<String> = settings.unwrap_or_default().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
    // p_factor depends on n; sorting keeps the result independent of dict order.
    pairs.sort();
    let cfg = Config::default().with_overrides(pairs.iter().map(String::as_str)).map_err(value_err)?;
    harness::check_strategies(&cfg).map_err(value_err)?;
    Ok(cfg)
}

/// Plays one game; `config` holds `key -> value` strings as in a config file.
#[pyfunction]
#[pyo3(signature = (config=None, seed=0))]
fn play(py: Python<'_>, config: Option<HashMap<String, String>>, seed: u64) -> PyResult<PyObject> {
    let cfg = config_from(config)?;
    to_py(py, &py.allow_threads(|| harness::run_trial(&cfg, seed)))
}

/// Plays the configured seed schedule; records come back in seed order.
#[pyfunction]
#[pyo3(signature = (config=None))]
fn run_trials(py: Python<'_>, config: Option<HashMap<String, String>>) -> PyResult<PyObject> {
    let cfg = config_from(config)?;
    to_py(py, &py.allow_threads(|| harness::run_trials(&cfg)))
}

/// Runs `b_range` and returns `(records, estimate)`.
#[pyfunction]
#[pyo3(signature = (config=None))]
fn bias_scan(py: Python<'_>, config: Option<HashMap<String, String>>) -> PyResult<(PyObject, PyObject)> {
    let cfg = config_from(config)?;
    let (recs, est) = py.allow_threads(|| harness::bias_scan(&cfg));
    Ok((to_py(py, &recs)?, to_py(py, &est)?))
}

/// Wilson 95% interval.
#[pyfunction]
fn wilson(wins: usize, trials: usize) -> (f64, f64) {
    harness::wilson(wins, trials)
}

/// Exact winner ("maker"/"breaker" or "avoider"/"enforcer") on a small board.
#[pyfunction]
#[pyo3(signature = (graph, target="connectivity", a=1, b=1, convention="mb", first="maker"))]
fn solve(graph: &PyGraph, target: &str, a: usize, b: usize, convention: &str, first: &str) -> PyResult<String> {
    let first = Role::from_label(first).ok_or_else(|| value_err(format!("unknown role `{first}`")))?;
    let conv = convention.parse().map_err(value_err)?;
    let spec = GameSpec::new(conv, target.parse().map_err(value_err)?, a, b).with_first(first);
    let r = solve_exact(&spec, &graph.inner).map_err(value_err)?;
    Ok(r.winner.label(conv).to_string())
}

/// `(threshold, exact winner, BoxMaker-strategy result)` for Box(m, l, b).
#[pyfunction]
fn box_game(m: usize, l: usize, b: usize) -> PyResult<(f64, String, String)> {
    let t = box_threshold(m, l).map_err(value_err)?;
    let s = BoxState::new(m, l, b);
    let exact = solve_box_exact(&s).map_err(value_err)?;
    let strat = boxmaker_vs_optimal_breaker(&s).map_err(value_err)?;
    Ok((t, format!("{exact:?}").to_lowercase(), format!("{strat:?}").to_lowercase()))
}

/// Chernoff tail bounds `(lower, upper)` for Bin(n, p) at relative deviation `a`.
#[pyfunction]
fn chernoff(n: u64, p: f64, a: f64) -> PyResult<(f64, Option<f64>)> {
    let b = props::chernoff_bounds(n, p, a).map_err(value_err)?;
    Ok((b.lower_tail, b.upper_tail))
}

#[pyfunction]
fn strategy_names() -> Vec<&'static str> {
    gnpgames::strategies::strategy_names()
}

#[pymodule]
pub fn pygnpgames(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(play, m)?)?;
    m.add_function(wrap_pyfunction!(run_trials, m)?)?;
    m.add_function(wrap_pyfunction!(bias_scan, m)?)?;
    m.add_function(wrap_pyfunction!(wilson, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(box_game, m)?)?;
    m.add_function(wrap_pyfunction!(chernoff, m)?)?;
    m.add_function(wrap_pyfunction!(strategy_names, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
