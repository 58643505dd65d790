//! Python bindings. Computed objects come back as plain dicts built from
//! the same JSON the command line writes.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde_json::Value;

use singlift::problem::{self, ProblemFile, Task};
use singlift::report;
use singlift::toric::{self, NewtonData};
use singlift::{invariants, lifting, resolution, Error, MultiIdeal, ResolveOptions};

create_exception!(singlift, SingliftError, PyException);

fn err(e: Error) -> PyErr {
    SingliftError::new_err(format!("{}: {}", e.kind(), e))
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn options(blowup_cap: Option<usize>, ext_cap: Option<usize>) -> ResolveOptions {
    let d = ResolveOptions::default();
    ResolveOptions {
        blowup_cap: blowup_cap.unwrap_or(d.blowup_cap),
        ext_cap: ext_cap.unwrap_or(d.ext_cap),
    }
}

#[pyclass(name = "Field", frozen)]
struct PyField(singlift::Field);

#[pymethods]
impl PyField {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        singlift::Field::parse(spec).map(PyField).map_err(err)
    }

    #[getter]
    fn characteristic(&self) -> u64 {
        self.0.characteristic()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    /// The characteristic-zero field the lifts live in.
    fn lifted(&self) -> PyResult<PyField> {
        singlift::lift_field(&self.0).map(|(k, _)| PyField(k)).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.name()
    }

    fn __repr__(&self) -> String {
        format!("Field('{}')", self.0.name())
    }

    fn __eq__(&self, other: &PyField) -> bool {
        self.0 == other.0
    }
}

#[pyclass(name = "Polynomial", frozen)]
struct PyPoly(singlift::Poly);

#[pymethods]
impl PyPoly {
    #[new]
    fn new(text: &str, field: &PyField) -> PyResult<Self> {
        singlift::Poly::parse(text, &field.0).map(PyPoly).map_err(err)
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField(self.0.field().clone())
    }

    fn order(&self) -> Option<u32> {
        self.0.order()
    }

    fn total_degree(&self) -> Option<u32> {
        self.0.total_degree()
    }

    fn __add__(&self, other: &PyPoly) -> PyPoly {
        PyPoly(self.0.add(&other.0))
    }

    fn __sub__(&self, other: &PyPoly) -> PyPoly {
        PyPoly(self.0.sub(&other.0))
    }

    fn __mul__(&self, other: &PyPoly) -> PyPoly {
        PyPoly(self.0.mul(&other.0))
    }

    fn __eq__(&self, other: &PyPoly) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}', Field('{}'))", self.0, self.0.field().name())
    }
}

/// A multi-ideal `a_1^{e_1} ... a_r^{e_r}`.
#[pyclass(name = "MultiIdeal", frozen)]
struct PyMultiIdeal(MultiIdeal);

#[pymethods]
impl PyMultiIdeal {
    /// `ideals` is a list of `(generators, exponent)` with the exponent as
    /// a string such as `"5/6"`.
    #[new]
    fn new(field: &PyField, ideals: Vec<(Vec<String>, String)>) -> PyResult<Self> {
        let parsed = ideals
            .iter()
            .map(|(g, e)| Ok((g.iter().map(String::as_str).collect(), problem::parse_exponent(e)?)))
            .collect::<Result<Vec<_>, Error>>()
            .map_err(err)?;
        MultiIdeal::parse(&field.0, &parsed).map(PyMultiIdeal).map_err(err)
    }

    #[staticmethod]
    fn principal(f: &PyPoly, exponent: &str) -> PyResult<Self> {
        let e = problem::parse_exponent(exponent).map_err(err)?;
        MultiIdeal::principal(&f.0, e).map(PyMultiIdeal).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        report::ideal_json(&self.0).to_string()
    }
}

#[pyfunction]
#[pyo3(signature = (f, blowup_cap=None, ext_cap=None))]
fn embedded_resolve<'py>(
    py: Python<'py>,
    f: &PyPoly,
    blowup_cap: Option<usize>,
    ext_cap: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let res = resolution::embedded_resolve(&f.0, options(blowup_cap, ext_cap)).map_err(err)?;
    to_py(py, &report::resolution_json(&res))
}

#[pyfunction]
#[pyo3(signature = (m, blowup_cap=None, ext_cap=None))]
fn log_resolve<'py>(
    py: Python<'py>,
    m: &PyMultiIdeal,
    blowup_cap: Option<usize>,
    ext_cap: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let res = resolution::log_resolve(&m.0, options(blowup_cap, ext_cap)).map_err(err)?;
    to_py(py, &report::resolution_json(&res))
}

/// Log discrepancy table with `lct` and `mld`.
#[pyfunction(name = "invariants")]
#[pyo3(signature = (m, blowup_cap=None, ext_cap=None))]
fn py_invariants<'py>(
    py: Python<'py>,
    m: &PyMultiIdeal,
    blowup_cap: Option<usize>,
    ext_cap: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let (_, table, rep) = invariants::invariants(&m.0, options(blowup_cap, ext_cap)).map_err(err)?;
    to_py(py, &report::invariant_report_json(&rep, &table))
}

#[pyfunction]
#[pyo3(signature = (m, degree_slack=None, blowup_cap=None, ext_cap=None))]
fn lift<'py>(
    py: Python<'py>,
    m: &PyMultiIdeal,
    degree_slack: Option<usize>,
    blowup_cap: Option<usize>,
    ext_cap: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let a = lifting::lift(&m.0, options(blowup_cap, ext_cap), degree_slack).map_err(err)?;
    to_py(py, &report::lift_json(&a))
}

#[pyfunction]
#[pyo3(signature = (f, degree_slack=None, blowup_cap=None, ext_cap=None))]
fn campillo<'py>(
    py: Python<'py>,
    f: &PyPoly,
    degree_slack: Option<usize>,
    blowup_cap: Option<usize>,
    ext_cap: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let a = lifting::campillo(&f.0, options(blowup_cap, ext_cap), degree_slack).map_err(err)?;
    to_py(py, &report::lift_json(&a))
}

/// Toric `lct` and `mld` of a monomial multi-ideal, as strings.
#[pyfunction]
#[pyo3(signature = (m, weight_bound=None))]
fn toric_invariants(m: &PyMultiIdeal, weight_bound: Option<u64>) -> PyResult<(String, String)> {
    let n = NewtonData::from_multi_ideal(&m.0).map_err(err)?;
    let (lct, _) = toric::toric_lct(&n).map_err(err)?;
    let (mld, _) = toric::toric_mld(&n, weight_bound).map_err(err)?;
    Ok((singlift::invariants::rational_string(&lct), mld.to_string()))
}

/// Runs a problem file given as a JSON string.
#[pyfunction]
#[pyo3(signature = (text, tasks=None))]
fn run_problem<'py>(py: Python<'py>, text: &str, tasks: Option<Vec<String>>) -> PyResult<Bound<'py, PyAny>> {
    let p = ProblemFile::from_json(text).map_err(err)?;
    let tasks: Vec<Task> = tasks
        .unwrap_or_default()
        .iter()
        .map(|t| serde_json::from_value(Value::String(t.clone())))
        .collect::<Result<_, _>>()
        .map_err(|e| SingliftError::new_err(e.to_string()))?;
    let o = problem::run(&p, &tasks).map_err(err)?;
    if let Some(e) = o.failure {
        return Err(err(e));
    }
    to_py(py, &o.json)
}

#[pymodule]
#[pyo3(name = "singlift")]
fn singlift_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SingliftError", m.py().get_type::<SingliftError>())?;
    m.add_class::<PyField>()?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PyMultiIdeal>()?;
    m.add_function(wrap_pyfunction!(embedded_resolve, m)?)?;
    m.add_function(wrap_pyfunction!(log_resolve, m)?)?;
    m.add_function(wrap_pyfunction!(py_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(lift, m)?)?;
    m.add_function(wrap_pyfunction!(campillo, m)?)?;
    m.add_function(wrap_pyfunction!(toric_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(run_problem, m)?)?;
    Ok(())
}
