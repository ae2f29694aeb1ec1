//! Python bindings. Reports come back as plain dicts and lists, parsed
//! from the same JSON the command-line tool prints.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

use graph_hypergroups::convolution::{
    convolution_table as table, mc_estimate as estimate, DEFAULT_LAZY_LEVEL,
};
use graph_hypergroups::generators::{search_graphs as search, FamilySpec};
use graph_hypergroups::graph::{FiniteGraph, Graph as CoreGraph, Vertex};
use graph_hypergroups::hypergroup::{
    classify_base_points, graph_is_productive, productivity as verdict,
};
use graph_hypergroups::report::{
    to_json, ConvolutionReport, GraphJson, SchemeReport, VerdictReport,
};
use graph_hypergroups::scheme::{check_distance_regular, intersection_numbers, srg_parameters};
use graph_hypergroups::Error;

create_exception!(hypergroups, NotSelfCenteredError, PyValueError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NotSelfCentered { .. } => NotSelfCenteredError::new_err(e.to_string()),
        Error::MalformedOracle { .. } | Error::NotAScheme(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn loads<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// A finite graph or an infinite family member.
#[pyclass(frozen, module = "hypergroups")]
pub struct Graph {
    inner: CoreGraph,
    spec: String,
}

impl Graph {
    fn base(&self, base: Option<&str>) -> PyResult<Vertex> {
        match base {
            Some(s) => self.inner.parse_vertex(s).map_err(to_py),
            None => Ok(self.inner.default_base()),
        }
    }

    fn level(&self, max_level: Option<usize>) -> Option<usize> {
        match self.inner {
            CoreGraph::Finite(_) => max_level,
            CoreGraph::Lazy(_) => Some(max_level.unwrap_or(DEFAULT_LAZY_LEVEL)),
        }
    }

    fn finite(&self) -> PyResult<&FiniteGraph> {
        match &self.inner {
            CoreGraph::Finite(g) => Ok(g),
            CoreGraph::Lazy(_) => Err(PyValueError::new_err(format!("{} is infinite", self.spec))),
        }
    }
}

#[pymethods]
impl Graph {
    /// Builds a graph from a spec such as "prism:5", "tree:3" or "ladder".
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let family: FamilySpec = spec.parse().map_err(to_py)?;
        Ok(Graph {
            inner: family.build().map_err(to_py)?,
            spec: family.to_string(),
        })
    }

    #[staticmethod]
    fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let g = FiniteGraph::from_edges(n, &edges).map_err(to_py)?;
        Ok(Graph {
            inner: CoreGraph::Finite(g),
            spec: format!("edges:{n}"),
        })
    }

    #[getter]
    fn is_finite(&self) -> bool {
        self.inner.is_finite()
    }

    /// Number of vertices, or None for infinite graphs.
    #[getter]
    fn order(&self) -> Option<usize> {
        self.finite().ok().map(FiniteGraph::order)
    }

    fn edges(&self) -> PyResult<Vec<(usize, usize)>> {
        Ok(self.finite()?.edges())
    }

    fn __repr__(&self) -> String {
        format!("Graph({:?})", self.spec)
    }

    /// Convolution report: {"base", "max_level", "exact", "rows"}.
    #[pyo3(signature = (base=None, max_level=None))]
    fn convolution_table<'py>(
        &self,
        py: Python<'py>,
        base: Option<&str>,
        max_level: Option<usize>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let v0 = self.base(base)?;
        let t = py
            .detach(|| table(&self.inner, &v0, self.level(max_level)))
            .map_err(to_py)?;
        loads(py, &to_json(&ConvolutionReport::new(&t)))
    }

    /// Productivity verdict: {"productive", "scope", "failures", "classes"}.
    #[pyo3(signature = (base=None, max_level=None, all_basepoints=false))]
    fn productivity<'py>(
        &self,
        py: Python<'py>,
        base: Option<&str>,
        max_level: Option<usize>,
        all_basepoints: bool,
    ) -> PyResult<Bound<'py, PyAny>> {
        let v0 = self.base(base)?;
        let level = self.level(max_level);
        let classes = if all_basepoints {
            let g = self.finite()?;
            Some(py.detach(|| classify_base_points(g)).map_err(to_py)?)
        } else {
            None
        };
        let v = py
            .detach(|| verdict(&self.inner, &v0, level))
            .map_err(to_py)?;
        loads(py, &to_json(&VerdictReport::new(&v, classes.as_ref())))
    }

    /// Scheme report: {"distance_regular", "intersection_array", "p", "srg", "witness"}.
    #[pyo3(signature = (max_level=None))]
    fn distance_regularity<'py>(
        &self,
        py: Python<'py>,
        max_level: Option<usize>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let level = self.level(max_level);
        let report = py
            .detach(|| -> graph_hypergroups::Result<SchemeReport> {
                let v = check_distance_regular(&self.inner, level)?;
                let scheme = if v.distance_regular {
                    Some(intersection_numbers(
                        &self.inner,
                        &self.inner.default_base(),
                        level,
                    )?)
                } else {
                    None
                };
                let srg = self.finite().ok().and_then(srg_parameters);
                Ok(SchemeReport::new(&v, scheme.as_ref(), srg))
            })
            .map_err(to_py)?;
        loads(py, &to_json(&report))
    }

    /// Monte Carlo counts of the level reached by `R_i ∘ R_j`.
    #[pyo3(signature = (i, j, samples=100_000, seed=0, base=None))]
    fn mc_estimate(
        &self,
        py: Python<'_>,
        i: usize,
        j: usize,
        samples: u64,
        seed: u64,
        base: Option<&str>,
    ) -> PyResult<Vec<(usize, u64)>> {
        let v0 = self.base(base)?;
        let est = py
            .detach(|| estimate(&self.inner, &v0, i, j, samples, seed))
            .map_err(to_py)?;
        Ok(est.counts.into_iter().collect())
    }
}

/// Connected regular graphs up to isomorphism, as `{"n", "edges"}` dicts.
#[pyfunction]
#[pyo3(signature = (order, degree, productive=false))]
fn search_graphs<'py>(
    py: Python<'py>,
    order: usize,
    degree: usize,
    productive: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let found = py
        .detach(|| {
            search(order, degree, |g| {
                !productive || graph_is_productive(g).unwrap_or(false)
            })
        })
        .map_err(to_py)?;
    let graphs: Vec<GraphJson> = found
        .iter()
        .map(|g| GraphJson {
            n: g.order(),
            edges: g.edges(),
        })
        .collect();
    loads(py, &to_json(&graphs))
}

/// Distance between two vertices of the linked-triangle graph.
#[pyfunction]
fn word_distance(v: &str, w: &str) -> PyResult<usize> {
    graph_hypergroups::scheme::word_distance(v, w).map_err(to_py)
}

#[pymodule]
fn hypergroups(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_function(wrap_pyfunction!(search_graphs, m)?)?;
    m.add_function(wrap_pyfunction!(word_distance, m)?)?;
    m.add(
        "NotSelfCenteredError",
        m.py().get_type::<NotSelfCenteredError>(),
    )?;
    Ok(())
}
