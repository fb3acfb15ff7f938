//! Python bindings for `chainreach`.
//!
//! Graphs are stored with sorted adjacency lists so that any `Dag` can be
//! indexed directly.

use pyo3::exceptions::{PyIndexError, PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use chainreach::{self as core, io, Error, GeneratorConfig, ModelKind};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::VertexOutOfRange { .. } | Error::EdgeOutOfRange { .. } => {
            PyIndexError::new_err(e.to_string())
        }
        Error::Io { .. } => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn check_vertex(n: usize, v: usize) -> PyResult<()> {
    if v < n {
        Ok(())
    } else {
        Err(to_py(Error::VertexOutOfRange { vertex: v, n }))
    }
}

/// Directed acyclic graph on vertices `0..n`.
#[pyclass(name = "Dag", module = "chainreach", frozen)]
struct PyDag {
    inner: core::Dag,
}

impl PyDag {
    fn wrap(dag: core::Dag) -> Self {
        PyDag {
            inner: dag.sort_adjacency_lists(),
        }
    }
}

#[pymethods]
impl PyDag {
    /// Builds a DAG from `(u, v)` pairs. Self-loops and duplicate edges are
    /// dropped; a cycle raises `ValueError`.
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        core::Dag::from_edges(n, edges)
            .map(Self::wrap)
            .map_err(to_py)
    }

    /// Random DAG from model `"er"`, `"ba"`, `"ws"` or `"pb"`, with
    /// `degree` edges per vertex on average.
    #[staticmethod]
    #[pyo3(signature = (model, n, degree=10.0, seed=1, b=0.3, paths=100))]
    fn generate(
        model: &str,
        n: usize,
        degree: f64,
        seed: u64,
        b: f64,
        paths: usize,
    ) -> PyResult<Self> {
        let kind: ModelKind = model.parse().map_err(to_py)?;
        GeneratorConfig::for_degree(kind, n, degree, seed, b, paths)
            .generate()
            .map(Self::wrap)
            .map_err(to_py)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        io::load_edge_list(path).map(Self::wrap).map_err(to_py)
    }

    fn save(&self, path: &str) -> PyResult<()> {
        io::save_edge_list(path, &self.inner).map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn successors(&self, v: usize) -> PyResult<Vec<usize>> {
        check_vertex(self.n(), v)?;
        Ok(self.inner.successors(v).to_vec())
    }

    fn predecessors(&self, v: usize) -> PyResult<Vec<usize>> {
        check_vertex(self.n(), v)?;
        Ok(self.inner.predecessors(v).to_vec())
    }

    fn topo_order(&self) -> Vec<usize> {
        self.inner.topo_order().to_vec()
    }

    /// Vertices reachable from `s` by DFS, `s` included, in ascending id order.
    fn reachable(&self, s: usize) -> PyResult<Vec<usize>> {
        check_vertex(self.n(), s)?;
        Ok(self.inner.dfs_reachable(s).ones().collect())
    }

    fn __len__(&self) -> usize {
        self.n()
    }

    fn __repr__(&self) -> String {
        format!("Dag(n={}, edges={})", self.n(), self.edge_count())
    }
}

/// Vertex-disjoint chains covering every vertex.
#[pyclass(name = "ChainDecomposition", module = "chainreach", frozen)]
struct PyChains {
    inner: core::ChainDecomposition,
}

#[pymethods]
impl PyChains {
    /// Validates `chains` against `dag`.
    #[new]
    fn new(dag: &PyDag, chains: Vec<Vec<usize>>) -> PyResult<Self> {
        core::ChainDecomposition::from_chains(&dag.inner, chains)
            .map(|inner| PyChains { inner })
            .map_err(to_py)
    }

    #[getter]
    fn chains(&self) -> Vec<Vec<usize>> {
        self.inner.chains().to_vec()
    }

    /// 0-based chain id of `v`.
    fn chain_of(&self, v: usize) -> PyResult<usize> {
        check_vertex(self.inner.vertex_count(), v)?;
        Ok(self.inner.chain_of(v))
    }

    /// 1-based position of `v` within its chain.
    fn pos_of(&self, v: usize) -> PyResult<u32> {
        check_vertex(self.inner.vertex_count(), v)?;
        Ok(self.inner.pos_of(v))
    }

    fn __len__(&self) -> usize {
        self.inner.chain_count()
    }

    fn __repr__(&self) -> String {
        format!("ChainDecomposition(k_c={})", self.inner.chain_count())
    }
}

fn concat_stats<'py>(py: Python<'py>, s: core::ConcatStats) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("k_p", s.k_p)?;
    d.set_item("k_c", s.k_c)?;
    d.set_item("c", s.c)?;
    d.set_item("total_path_len", s.total_path_len)?;
    Ok(d)
}

/// Chain heuristic with online concatenation. Returns `(chains, stats)`.
#[pyfunction]
fn nh_conc<'py>(py: Python<'py>, dag: &PyDag) -> PyResult<(PyChains, Bound<'py, PyDict>)> {
    let (inner, stats) = core::nh_conc(&dag.inner);
    Ok((PyChains { inner }, concat_stats(py, stats)?))
}

/// Splits the DAG into vertex-disjoint paths.
#[pyfunction]
fn node_order_paths(dag: &PyDag) -> PyChains {
    PyChains {
        inner: core::node_order_paths(&dag.inner),
    }
}

/// Merges paths whose tail reaches another path's head.
#[pyfunction]
fn concatenate<'py>(
    py: Python<'py>,
    dag: &PyDag,
    paths: &PyChains,
) -> PyResult<(PyChains, Bound<'py, PyDict>)> {
    if paths.inner.vertex_count() != dag.n() {
        return Err(PyValueError::new_err("decomposition does not match graph"));
    }
    let (inner, stats) = core::concatenate(&dag.inner, &paths.inner);
    Ok((PyChains { inner }, concat_stats(py, stats)?))
}

/// Removes chain-detectable transitive edges. `outgoing_only` skips the
/// incoming pass. Returns `(reduced_dag, stats)`.
#[pyfunction]
#[pyo3(signature = (dag, chains=None, outgoing_only=false))]
fn reduce<'py>(
    py: Python<'py>,
    dag: &PyDag,
    chains: Option<&PyChains>,
    outgoing_only: bool,
) -> PyResult<(PyDag, Bound<'py, PyDict>)> {
    let owned;
    let dec = match chains {
        Some(c) if c.inner.vertex_count() == dag.n() => &c.inner,
        Some(_) => return Err(PyValueError::new_err("decomposition does not match graph")),
        None => {
            owned = core::nh_conc(&dag.inner).0;
            &owned
        }
    };
    let (reduced, s) = if outgoing_only {
        core::reduce_outgoing(&dag.inner, dec)
    } else {
        core::reduce(&dag.inner, dec)
    };
    let d = PyDict::new(py);
    d.set_item("removed_out", s.removed_out)?;
    d.set_item("removed_in", s.removed_in)?;
    d.set_item("remaining", s.remaining)?;
    Ok((PyDag { inner: reduced }, d))
}

/// Constant-time reachability index over a chain decomposition.
#[pyclass(name = "ReachIndex", module = "chainreach", frozen)]
struct PyReachIndex {
    inner: core::ReachIndex,
}

#[pymethods]
impl PyReachIndex {
    /// Builds the index, using `nh_conc` chains when none are given.
    #[new]
    #[pyo3(signature = (dag, chains=None))]
    fn new(dag: &PyDag, chains: Option<&PyChains>) -> PyResult<Self> {
        let inner = match chains {
            Some(c) => core::ReachIndex::build(&dag.inner, &c.inner),
            None => core::ReachIndex::build(&dag.inner, &core::nh_conc(&dag.inner).0),
        };
        inner.map(|inner| PyReachIndex { inner }).map_err(to_py)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        io::load_index(path)
            .map(|inner| PyReachIndex { inner })
            .map_err(to_py)
    }

    fn save(&self, path: &str) -> PyResult<()> {
        let file = std::fs::File::create(path).map_err(|e| PyOSError::new_err(e.to_string()))?;
        io::write_index(std::io::BufWriter::new(file), &self.inner)
            .map_err(|e| PyOSError::new_err(e.to_string()))
    }

    fn reaches(&self, s: usize, t: usize) -> PyResult<bool> {
        self.inner.query(s, t).map_err(to_py)
    }

    /// Lowest reachable position per chain, `None` where unreachable.
    fn row(&self, v: usize) -> PyResult<Vec<Option<u32>>> {
        check_vertex(self.inner.vertex_count(), v)?;
        Ok(self
            .inner
            .row(v)
            .iter()
            .map(|&e| (e != core::UNREACHABLE).then_some(e))
            .collect())
    }

    /// `(e_tr, e_red)` counted during the build.
    fn edge_classification(&self) -> (usize, usize) {
        self.inner.edge_classification()
    }

    #[getter]
    fn chain_count(&self) -> usize {
        self.inner.chain_count()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "ReachIndex(n={}, k_c={})",
            self.inner.vertex_count(),
            self.inner.chain_count()
        )
    }
}

#[pyclass(name = "WidthResult", module = "chainreach", frozen, get_all)]
struct PyWidthResult {
    width: usize,
    chains: Vec<Vec<usize>>,
    heuristic_chains: usize,
    index_ms: f64,
    bipartite_ms: f64,
    matching_ms: f64,
}

#[pymethods]
impl PyWidthResult {
    fn __repr__(&self) -> String {
        format!("WidthResult(width={})", self.width)
    }
}

/// Width and a minimum chain decomposition via maximum bipartite matching.
#[pyfunction]
fn fulkerson_width(py: Python<'_>, dag: &PyDag) -> PyWidthResult {
    let r = py.detach(|| core::fulkerson_width(&dag.inner));
    let ms = |d: std::time::Duration| d.as_secs_f64() * 1e3;
    PyWidthResult {
        width: r.width,
        heuristic_chains: r.heuristic_chains,
        index_ms: ms(r.timings.index),
        bipartite_ms: ms(r.timings.bipartite),
        matching_ms: ms(r.timings.matching),
        chains: r.chains.into_chains(),
    }
}

#[pymodule]
#[pyo3(name = "chainreach")]
fn chainreach_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDag>()?;
    m.add_class::<PyChains>()?;
    m.add_class::<PyReachIndex>()?;
    m.add_class::<PyWidthResult>()?;
    m.add_function(wrap_pyfunction!(nh_conc, m)?)?;
    m.add_function(wrap_pyfunction!(node_order_paths, m)?)?;
    m.add_function(wrap_pyfunction!(concatenate, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(fulkerson_width, m)?)?;
    m.add("UNREACHABLE", core::UNREACHABLE)?;
    Ok(())
}
