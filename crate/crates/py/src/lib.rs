use ldescent_core::cli::case::{generate_random_case, CaseBounds, CaseFile};
use ldescent_core::cli::verify::{Suite, VerifyOptions};
use ldescent_core::cli::{self, Mode};
use ldescent_core::hermitian::Family;
use ldescent_core::{Error, LocalField};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_json(s: &str) -> PyResult<Value> {
    serde_json::from_str(s).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn family(name: &str) -> PyResult<Family> {
    Family::ALL
        .into_iter()
        .find(|f| f.name() == name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown family {name:?}")))
}

/// A local field: `Q2`, `Q3`, ... or `R`.
#[pyclass(name = "Field", frozen)]
struct PyField(LocalField);

#[pymethods]
impl PyField {
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        LocalField::parse(name).map(PyField).map_err(err)
    }

    fn square_classes(&self) -> Vec<String> {
        self.0.square_classes().into_iter().map(|c| c.tag()).collect()
    }

    /// Hilbert symbol of two class tags, as +1 or -1.
    fn hilbert(&self, a: &str, b: &str) -> PyResult<i8> {
        let a = self.0.parse_class(a).map_err(err)?;
        let b = self.0.parse_class(b).map_err(err)?;
        Ok(a.hilbert(b).to_i8())
    }

    fn __repr__(&self) -> String {
        format!("Field({:?})", self.0.name())
    }
}

/// A case file: model, group, enhanced parameter and search bounds.
#[pyclass(name = "Case", frozen)]
struct PyCase(CaseFile);

#[pymethods]
impl PyCase {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        CaseFile::from_json(&parse_json(text)?, None).map(PyCase).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (family_name, seed, max_space_dim = 6, field = None))]
    fn generate(family_name: &str, seed: u64, max_space_dim: usize, field: Option<&str>) -> PyResult<Self> {
        let bounds = CaseBounds {
            max_space_dim,
            field: field.map(LocalField::parse).transpose().map_err(err)?,
            ..CaseBounds::default()
        };
        generate_random_case(family(family_name)?, seed, &bounds).map(PyCase).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.0.group.family.name()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.group.dim()
    }

    #[getter]
    fn field(&self) -> String {
        self.0.field().name()
    }

    fn component_group_order(&self) -> u64 {
        self.0.phi.component_group(&self.0.model.alphabet).order()
    }

    /// The contragredient of the member, as JSON.
    fn contragredient(&self) -> PyResult<String> {
        let ep = self.0.enhanced().and_then(|e| e.contragredient(&self.0.model)).map_err(err)?;
        Ok(ep.to_json(&self.0.model.alphabet).to_string())
    }

    fn packet(&self) -> PyResult<String> {
        Ok(cli::packet(&self.0).map_err(err)?.json.to_string())
    }

    #[pyo3(signature = (ell, z = None, max_dim = None))]
    fn descend(&self, ell: usize, z: Option<&str>, max_dim: Option<usize>) -> PyResult<String> {
        Ok(cli::descend(&self.0, ell, z, max_dim).map_err(err)?.json.to_string())
    }

    #[pyo3(signature = (mode = "arithmetic"))]
    fn first_occurrence(&self, mode: &str) -> PyResult<String> {
        let mode: Mode = mode.parse().map_err(err)?;
        Ok(cli::first_occurrence_cmd(&self.0, mode).map_err(err)?.json.to_string())
    }

    fn spectrum(&self, p1: usize) -> PyResult<String> {
        Ok(cli::spectrum(&self.0, p1).map_err(err)?.json.to_string())
    }

    fn submodule(&self) -> PyResult<String> {
        Ok(cli::submodule(&self.0).map_err(err)?.json.to_string())
    }

    fn __repr__(&self) -> String {
        format!("Case({}({}) over {})", self.family(), self.dim(), self.field())
    }
}

#[pyfunction]
#[pyo3(signature = (text, field = None))]
fn classify_space(text: &str, field: Option<&str>) -> PyResult<String> {
    let f = field.map(LocalField::parse).transpose().map_err(err)?;
    Ok(cli::classify_space(&parse_json(text)?, f).map_err(err)?.json.to_string())
}

/// Runs a verification suite and returns its report as JSON.
#[pyfunction]
#[pyo3(signature = (suite, cases = 200, seed = 0))]
fn verify(py: Python<'_>, suite: &str, cases: usize, seed: u64) -> PyResult<String> {
    let suite: Suite = suite.parse().map_err(err)?;
    let opts = VerifyOptions::new(cases, seed);
    let out = py.detach(|| cli::verify(suite, &opts));
    Ok(out.json.to_string())
}

#[pymodule]
fn ldescent(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyCase>()?;
    m.add_function(wrap_pyfunction!(classify_space, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
