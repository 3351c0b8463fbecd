use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tempo_sep::classes::classify as classify_graph;
use tempo_sep::generators::{generate as generate_instance, ClassConstraint, GenSpec};
use tempo_sep::graph::{Label, TemporalGraph, Vertex};
use tempo_sep::io::{parse_tg, write_tg};
use tempo_sep::oracle::{is_separator as check_separator, min_separator_bruteforce, Instance};
use tempo_sep::reachability::{find_temporal_path as find_path, Mode};
use tempo_sep::reductions::ReductionKind;
use tempo_sep::solvers::{solve_auto, Hints};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn mode(strict: bool) -> Mode {
    if strict {
        Mode::Strict
    } else {
        Mode::NonStrict
    }
}

#[pyclass(name = "TemporalGraph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTemporalGraph {
    inner: TemporalGraph,
}

#[pymethods]
impl PyTemporalGraph {
    /// `edges` holds `(u, v, t)` triples with labels in `1..=tau`.
    #[new]
    fn new(n: usize, tau: Label, edges: Vec<(Vertex, Vertex, Label)>) -> PyResult<Self> {
        let inner = TemporalGraph::build(n, tau, edges).map_err(value_error)?;
        Ok(PyTemporalGraph { inner })
    }

    #[staticmethod]
    fn from_tg(text: &str) -> PyResult<Self> {
        Ok(PyTemporalGraph {
            inner: parse_tg(text).map_err(value_error)?,
        })
    }

    fn to_tg(&self) -> String {
        write_tg(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn tau(&self) -> Label {
        self.inner.tau()
    }

    fn edges(&self) -> Vec<(Vertex, Vertex, Label)> {
        self.inner.edges().iter().map(|e| (e.u, e.v, e.t)).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.num_edges()
    }

    fn __repr__(&self) -> String {
        format!(
            "TemporalGraph(n={}, tau={}, edges={})",
            self.inner.n(),
            self.inner.tau(),
            self.inner.num_edges()
        )
    }
}

fn instance(g: &PyTemporalGraph, s: Vertex, z: Vertex, k: usize) -> PyResult<Instance> {
    Instance::new(g.inner.clone(), s, z, k).map_err(value_error)
}

/// A temporal (s,z)-path as `(from, to, t)` steps, or `None`.
#[pyfunction]
#[pyo3(signature = (g, s, z, strict = false))]
fn find_temporal_path(g: &PyTemporalGraph, s: Vertex, z: Vertex, strict: bool) -> PyResult<Option<Vec<(Vertex, Vertex, Label)>>> {
    if s >= g.inner.n() || z >= g.inner.n() {
        return Err(PyValueError::new_err("terminal out of range"));
    }
    Ok(find_path(&g.inner, s, z, mode(strict)).map(|p| p.steps().iter().map(|st| (st.from, st.to, st.t)).collect()))
}

#[pyfunction]
#[pyo3(signature = (g, s, z, separator, strict = false))]
fn is_separator(g: &PyTemporalGraph, s: Vertex, z: Vertex, separator: Vec<Vertex>, strict: bool) -> PyResult<bool> {
    let inst = instance(g, s, z, 0)?;
    check_separator(&inst, &separator, mode(strict)).map_err(value_error)
}

/// Minimum separator by exhaustive enumeration.
#[pyfunction]
#[pyo3(signature = (g, s, z, strict = false))]
fn min_separator(g: &PyTemporalGraph, s: Vertex, z: Vertex, strict: bool) -> PyResult<Vec<Vertex>> {
    let inst = instance(g, s, z, 0)?;
    Ok(min_separator_bruteforce(&inst, mode(strict)).vertices().to_vec())
}

/// `(separator or None, backend name)` from the automatic dispatcher.
#[pyfunction]
#[pyo3(signature = (g, s, z, k, strict = false, ordering = None))]
fn solve(
    g: &PyTemporalGraph,
    s: Vertex,
    z: Vertex,
    k: usize,
    strict: bool,
    ordering: Option<Vec<Vertex>>,
) -> PyResult<(Option<Vec<Vertex>>, &'static str)> {
    let inst = instance(g, s, z, k)?;
    let hints = Hints {
        ordering,
        ..Hints::default()
    };
    let report = solve_auto(&inst, &hints, mode(strict)).map_err(value_error)?;
    Ok((report.separator.map(|s| s.vertices().to_vec()), report.backend.name()))
}

#[pyfunction]
fn classify<'py>(py: Python<'py>, g: &PyTemporalGraph) -> PyResult<Bound<'py, PyDict>> {
    let c = classify_graph(&g.inner);
    let d = PyDict::new(py);
    match &c.monotone {
        Some(m) => {
            d.set_item("monotone_p", m.p)?;
            d.set_item("peaks", m.peaks.clone())?;
        }
        None => {
            d.set_item("monotone_p", py.None())?;
            d.set_item("peaks", py.None())?;
        }
    }
    d.set_item("period", c.periodic.p)?;
    d.set_item("periods", c.periodic.r)?;
    d.set_item("steady_lambda", c.steady_lambda)?;
    d.set_item("interval_connected_max_t", c.interval_connected_max_t)?;
    Ok(d)
}

/// Seeded instance with `s = 0`, `z = n - 1`. `class_` is one of `none`,
/// `unit-interval`, `periodic:<p>:<r>`, `steady:<lambda>`, `monotone:<p>`.
#[pyfunction]
#[pyo3(signature = (n, tau, prob, seed, class_ = "none"))]
fn generate(n: usize, tau: Label, prob: f64, seed: u64, class_: &str) -> PyResult<PyTemporalGraph> {
    let parts: Vec<&str> = class_.split(':').collect();
    let num = |s: &str| s.parse::<usize>().map_err(value_error);
    let class = match parts.as_slice() {
        ["none"] => ClassConstraint::None,
        ["unit-interval"] => ClassConstraint::OrderPreservingUnitInterval,
        ["periodic", p, r] => ClassConstraint::Periodic {
            p: num(p)? as Label,
            r: num(r)? as Label,
        },
        ["steady", l] => ClassConstraint::Steady { lambda: num(l)? },
        ["monotone", p] => ClassConstraint::Monotone { p: num(p)? },
        _ => return Err(PyValueError::new_err(format!("unknown class `{class_}`"))),
    };
    let inst = generate_instance(&GenSpec::new(n, tau, prob, seed).with_class(class)).map_err(value_error)?;
    Ok(PyTemporalGraph {
        inner: inst.graph().clone(),
    })
}

/// Applies a reduction; returns `(graph, s, z, k, report)` with the report
/// as `key=value` text.
#[pyfunction]
fn reduce(kind: &str, g: &PyTemporalGraph, s: Vertex, z: Vertex, k: usize) -> PyResult<(PyTemporalGraph, Vertex, Vertex, usize, String)> {
    let kind = ReductionKind::from_name(kind).ok_or_else(|| PyValueError::new_err(format!("unknown reduction `{kind}`")))?;
    let (out, report) = kind.apply(&instance(g, s, z, k)?).map_err(value_error)?;
    Ok((
        PyTemporalGraph {
            inner: out.graph().clone(),
        },
        out.s(),
        out.z(),
        out.k(),
        report.to_text(),
    ))
}

#[pymodule]
#[pyo3(name = "tempo_sep")]
fn tempo_sep_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTemporalGraph>()?;
    m.add_function(wrap_pyfunction!(find_temporal_path, m)?)?;
    m.add_function(wrap_pyfunction!(is_separator, m)?)?;
    m.add_function(wrap_pyfunction!(min_separator, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    Ok(())
}
