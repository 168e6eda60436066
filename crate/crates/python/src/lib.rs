use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

use wtreereg::betti::{betti_table_with, regularity_with, OracleLimits};
use wtreereg::formulas::{power_regularity, reg_closed_form, reg_path_closed_form};
use wtreereg::harness::{self, VerifyOptions};
use wtreereg::matchings::{constrained_matching_number, induced_matching_number};
use wtreereg::monomial::{edge_ideal, Monomial, MonomialIdeal};
use wtreereg::wgraph::{is_integrally_closed, non_trivial_spine, WeightedGraph};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Round-trips a serializable value through `json.loads`.
fn to_py<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn monomial(m: BTreeMap<String, u32>) -> Monomial {
    Monomial::new(m)
}

/// Edge-weighted simple graph.
#[pyclass(name = "Graph", module = "pywtreereg", frozen, skip_from_py_object)]
struct PyGraph {
    inner: WeightedGraph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (vertices, edges))]
    fn new(vertices: Vec<String>, edges: Vec<(String, String, u32)>) -> PyResult<Self> {
        let inner = WeightedGraph::new(vertices, edges).map_err(value_error)?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = serde_json::from_str(text).map_err(value_error)?;
        Ok(PyGraph { inner })
    }

    /// Path `x1 - ... - xn` with the given edge weights.
    #[staticmethod]
    fn path(weights: Vec<u32>) -> PyResult<Self> {
        let inner = WeightedGraph::path(&weights).map_err(value_error)?;
        Ok(PyGraph { inner })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(value_error)
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String, u32)> {
        self.inner
            .to_json()
            .edges
            .into_iter()
            .map(|e| (e.u, e.v, e.w))
            .collect()
    }

    fn is_tree(&self) -> bool {
        self.inner.is_tree()
    }

    fn is_integrally_closed(&self) -> bool {
        is_integrally_closed(&self.inner)
    }

    fn is_trivially_weighted(&self) -> bool {
        self.inner.is_trivially_weighted()
    }

    fn spine<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &non_trivial_spine(&self.inner).map_err(value_error)?)
    }

    /// Induced matching number.
    fn nu(&self) -> usize {
        induced_matching_number(&self.inner).size
    }

    /// Largest induced matching containing the edge `uv`.
    fn s_value(&self, u: &str, v: &str) -> PyResult<usize> {
        Ok(constrained_matching_number(&self.inner, u, v).map_err(value_error)?.size)
    }

    fn edge_ideal(&self) -> PyIdeal {
        PyIdeal {
            inner: edge_ideal(&self.inner),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!("Graph({})", self.inner)
    }
}

/// Monomial ideal given by its minimal generators.
#[pyclass(name = "Ideal", module = "pywtreereg", frozen, skip_from_py_object)]
struct PyIdeal {
    inner: MonomialIdeal,
}

#[pymethods]
impl PyIdeal {
    #[new]
    #[pyo3(signature = (vars, gens))]
    fn new(vars: Vec<String>, gens: Vec<BTreeMap<String, u32>>) -> PyResult<Self> {
        let inner = MonomialIdeal::new(vars, gens.into_iter().map(monomial)).map_err(value_error)?;
        Ok(PyIdeal { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = serde_json::from_str(text).map_err(value_error)?;
        Ok(PyIdeal { inner })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(value_error)
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.inner.ambient().to_vec()
    }

    fn generators(&self) -> Vec<BTreeMap<String, u32>> {
        self.inner
            .generators()
            .iter()
            .map(|m| m.iter().map(|(v, e)| (v.to_string(), e)).collect())
            .collect()
    }

    fn contains(&self, m: BTreeMap<String, u32>) -> bool {
        self.inner.contains(&monomial(m))
    }

    fn power(&self, py: Python<'_>, t: u32) -> PyResult<PyIdeal> {
        let inner = py.detach(|| self.inner.power(t)).map_err(value_error)?;
        Ok(PyIdeal { inner })
    }

    fn colon(&self, m: BTreeMap<String, u32>) -> PyIdeal {
        PyIdeal {
            inner: self.inner.colon(&monomial(m)),
        }
    }

    fn intersect(&self, other: PyRef<'_, PyIdeal>) -> PyIdeal {
        PyIdeal {
            inner: self.inner.intersect(&other.inner),
        }
    }

    fn sum(&self, other: PyRef<'_, PyIdeal>) -> PyIdeal {
        PyIdeal {
            inner: self.inner.sum(&other.inner),
        }
    }

    fn product(&self, other: PyRef<'_, PyIdeal>) -> PyIdeal {
        PyIdeal {
            inner: self.inner.product(&other.inner),
        }
    }

    fn polarize(&self) -> PyIdeal {
        PyIdeal {
            inner: self.inner.polarize().ideal,
        }
    }

    /// `{(i, j): beta_ij}` for the ideal.
    fn betti_table<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let limits = OracleLimits::from_env();
        let table = py
            .detach(|| betti_table_with(&self.inner, &limits))
            .map_err(value_error)?;
        let out = PyDict::new(py);
        for ((i, j), beta) in table.entries() {
            out.set_item((i, j), beta)?;
        }
        Ok(out)
    }

    fn regularity(&self, py: Python<'_>) -> PyResult<u32> {
        let limits = OracleLimits::from_env();
        py.detach(|| regularity_with(&self.inner, &limits)).map_err(value_error)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: PyRef<'_, PyIdeal>) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Ideal{}", self.inner)
    }
}

/// Closed-form regularity: `{"value", "case_tag", "inputs_used"}`.
#[pyfunction(name = "reg_closed_form")]
fn py_reg_closed_form<'py>(py: Python<'py>, g: PyRef<'_, PyGraph>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &reg_closed_form(&g.inner).map_err(value_error)?)
}

#[pyfunction(name = "reg_path_closed_form")]
fn py_reg_path_closed_form<'py>(py: Python<'py>, g: PyRef<'_, PyGraph>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &reg_path_closed_form(&g.inner).map_err(value_error)?)
}

/// `{"t", "exact", "upper_bound", "exact_case_tag"}` for `reg(I^t)`.
#[pyfunction(name = "power_regularity")]
fn py_power_regularity<'py>(py: Python<'py>, g: PyRef<'_, PyGraph>, t: u32) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &power_regularity(&g.inner, t).map_err(value_error)?)
}

/// `reg(I(G)^t)` from graded Betti numbers.
#[pyfunction]
#[pyo3(signature = (g, t = 1))]
fn oracle_regularity(py: Python<'_>, g: PyRef<'_, PyGraph>, t: u32) -> PyResult<u32> {
    let ideal = edge_ideal(&g.inner).power(t).map_err(value_error)?;
    let limits = OracleLimits::from_env();
    py.detach(|| regularity_with(&ideal, &limits)).map_err(value_error)
}

#[pyfunction]
fn generate_instance(seed: u64, n: usize, max_weight: u32) -> PyResult<PyGraph> {
    let inner = harness::generate_instance(seed, n, max_weight).map_err(value_error)?;
    Ok(PyGraph { inner })
}

/// Verification report for one tree, as a dict.
#[pyfunction]
#[pyo3(signature = (g, t_max = 2))]
fn verify_instance<'py>(py: Python<'py>, g: PyRef<'_, PyGraph>, t_max: u32) -> PyResult<Bound<'py, PyAny>> {
    let opts = VerifyOptions {
        t_max,
        limits: OracleLimits::from_env(),
        ..VerifyOptions::default()
    };
    let graph = &g.inner;
    let report = py
        .detach(|| harness::verify_instance(graph, &opts))
        .map_err(value_error)?;
    to_py(py, &report)
}

#[pyfunction]
fn golden_instances() -> Vec<PyGraph> {
    harness::golden_instances()
        .into_iter()
        .map(|g| PyGraph { inner: g.graph })
        .collect()
}

#[pymodule]
fn pywtreereg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyIdeal>()?;
    m.add_function(wrap_pyfunction!(py_reg_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(py_reg_path_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(py_power_regularity, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_regularity, m)?)?;
    m.add_function(wrap_pyfunction!(generate_instance, m)?)?;
    m.add_function(wrap_pyfunction!(verify_instance, m)?)?;
    m.add_function(wrap_pyfunction!(golden_instances, m)?)?;
    Ok(())
}
