//! Python module `fmadm`.
//!
//! Schemes are opaque handles; datasets travel as CSV text so the Python
//! side never needs to know the cell model.

use fmadm_core::evaluate::{self, Method, MethodSelection, Overrides};
use fmadm_core::io::{self, render_documents};
use fmadm_core::model::{validate_dataset, Alternative};
use fmadm_core::{bundled, Error};
use pyo3::create_exception;
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

create_exception!(fmadm, FmadmError, PyValueError, "Validation or evaluation failure.");

fn to_py(e: Error) -> PyErr {
    if e.is_io() {
        PyOSError::new_err(e.to_string())
    } else {
        FmadmError::new_err(e.to_string())
    }
}

fn parse<T: std::str::FromStr>(raw: &str) -> PyResult<T>
where
    T::Err: std::fmt::Display,
{
    raw.parse().map_err(|e: T::Err| PyValueError::new_err(e.to_string()))
}

/// Triangular fuzzy number with a <= b <= c.
#[pyclass(name = "Tfn", frozen)]
struct PyTfn(fmadm_core::Tfn);

#[pymethods]
impl PyTfn {
    #[new]
    fn new(a: f64, b: f64, c: f64) -> PyResult<Self> {
        fmadm_core::make_tfn(a, b, c).map(Self).map_err(to_py)
    }

    #[getter]
    fn a(&self) -> f64 {
        self.0.a()
    }

    #[getter]
    fn b(&self) -> f64 {
        self.0.b()
    }

    #[getter]
    fn c(&self) -> f64 {
        self.0.c()
    }

    fn centroid(&self) -> f64 {
        fmadm_core::defuzzify_centroid(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Tfn({}, {}, {})", self.0.a(), self.0.b(), self.0.c())
    }
}

/// Centroid (a + b + c) / 3; exact for degenerate input.
#[pyfunction]
fn defuzzify(a: f64, b: f64, c: f64) -> PyResult<f64> {
    fmadm_core::make_tfn(a, b, c)
        .map(|t| fmadm_core::defuzzify_centroid(&t))
        .map_err(to_py)
}

/// A validated scoring scheme.
#[pyclass(name = "Scheme", frozen)]
struct PyScheme(fmadm_core::Scheme);

impl PyScheme {
    fn dataset(&self, csv: &str) -> PyResult<Vec<Alternative>> {
        io::parse_dataset(csv, &self.0).map_err(to_py)
    }
}

#[pymethods]
impl PyScheme {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        io::parse_scheme(text).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        io::load_scheme(path).map(Self).map_err(to_py)
    }

    /// One of "academic" or "non-academic".
    #[staticmethod]
    fn bundled(name: &str) -> PyResult<Self> {
        match name {
            "academic" => Ok(Self(bundled::academic())),
            "non-academic" => Ok(Self(bundled::non_academic())),
            other => Err(FmadmError::new_err(format!("no bundled scheme named {other:?}"))),
        }
    }

    #[getter]
    fn name(&self) -> &str {
        self.0.name()
    }

    #[getter]
    fn criteria(&self) -> Vec<String> {
        self.0.criterion_ids()
    }

    /// Crisp weight per criterion (centroid of its weight term).
    #[getter]
    fn weights(&self) -> Vec<f64> {
        fmadm_core::weight_vector(&self.0)
    }

    fn to_json(&self) -> String {
        io::scheme_to_json(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Scheme({:?}, criteria={})", self.0.name(), self.0.criteria().len())
    }
}

/// Bundled sample dataset as CSV text.
#[pyfunction]
fn sample_csv() -> &'static str {
    bundled::TABLE3
}

/// Issue strings, empty when the dataset is valid.
#[pyfunction]
fn validate(scheme: &PyScheme, csv: &str) -> PyResult<Vec<String>> {
    let alts = scheme.dataset(csv)?;
    Ok(validate_dataset(&scheme.0, &alts)
        .iter()
        .map(ToString::to_string)
        .collect())
}

/// Result document(s) as JSON text: an object for one method, an array for "both".
#[pyfunction]
#[pyo3(signature = (scheme, csv, method = "both"))]
fn rank_json(scheme: &PyScheme, csv: &str, method: &str) -> PyResult<String> {
    let selection: MethodSelection = parse(method)?;
    let alts = scheme.dataset(csv)?;
    let docs = evaluate::evaluate_all(&scheme.0, &alts, selection, &Overrides::new()).map_err(to_py)?;
    Ok(render_documents(&docs))
}

/// Same as `rank_json`, decoded with the stdlib json module.
#[pyfunction]
#[pyo3(signature = (scheme, csv, method = "both"))]
fn rank(py: Python<'_>, scheme: &PyScheme, csv: &str, method: &str) -> PyResult<Py<PyAny>> {
    let text = rank_json(scheme, csv, method)?;
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (text,))?.unbind())
}

/// Human-readable calculation trace for one alternative.
#[pyfunction]
#[pyo3(signature = (scheme, csv, id, method = "topsis"))]
fn explain(scheme: &PyScheme, csv: &str, id: &str, method: &str) -> PyResult<String> {
    let method: Method = parse(method)?;
    let alts = scheme.dataset(csv)?;
    evaluate::explain(&scheme.0, &alts, method, id)
        .map(|e| e.to_string())
        .map_err(to_py)
}

#[pymodule]
fn fmadm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("FmadmError", m.py().get_type::<FmadmError>())?;
    m.add_class::<PyTfn>()?;
    m.add_class::<PyScheme>()?;
    m.add_function(wrap_pyfunction!(defuzzify, m)?)?;
    m.add_function(wrap_pyfunction!(sample_csv, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(rank_json, m)?)?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(explain, m)?)?;
    Ok(())
}
