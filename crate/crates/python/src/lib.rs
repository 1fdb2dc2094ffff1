use std::collections::BTreeMap;
use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use dgcyc_core::check::{CheckReport, Verdict};
use dgcyc_core::complex::Window;
use dgcyc_core::error::Error;
use dgcyc_core::input::{parse_input, serialize};
use dgcyc_core::report::{emit_report, Format, Report};
use dgcyc_core::theorems::{self, ComplexKind, Pres};
use dgcyc_core::{examples, DgPresentation};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } | Error::Validation(_) => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

/// A finitely presented dg category over Q.
#[pyclass(name = "Presentation", frozen)]
struct PyPresentation {
    inner: Pres,
}

fn wrap(p: DgPresentation) -> PyPresentation {
    PyPresentation { inner: Arc::new(p) }
}

#[pymethods]
impl PyPresentation {
    /// Parses the line-oriented input format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_input(text).map(wrap).map_err(to_py)
    }

    #[staticmethod]
    fn unit() -> Self {
        wrap(examples::unit())
    }

    #[staticmethod]
    fn free_x() -> Self {
        wrap(examples::free_x())
    }

    #[staticmethod]
    fn dual_resolution() -> Self {
        wrap(examples::dual_resolution())
    }

    #[staticmethod]
    fn dual_numbers() -> Self {
        wrap(examples::dual_numbers())
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn objects(&self) -> Vec<String> {
        self.inner.objects.names().to_vec()
    }

    /// `(name, src, tgt, degree, weight)` per generator or basis element.
    #[getter]
    fn generators(&self) -> Vec<(String, String, String, i64, u32)> {
        let o = &self.inner.objects;
        self.inner
            .letters_decl()
            .iter()
            .map(|g| (g.name.clone(), o.name(g.src).to_string(), o.name(g.tgt).to_string(), g.degree, g.weight))
            .collect()
    }

    #[getter]
    fn is_semi_free(&self) -> bool {
        self.inner.is_semi_free()
    }

    #[getter]
    fn is_cofibrant(&self) -> bool {
        self.inner.is_cofibrant()
    }

    fn to_text(&self) -> String {
        serialize(&self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Presentation({:?})", self.inner.name)
    }
}

/// The verdict of one theorem check, with its sub-checks.
#[pyclass(name = "CheckResult", frozen)]
struct PyCheck {
    inner: CheckReport,
}

#[pymethods]
impl PyCheck {
    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    /// `"pass"`, `"fail"` or `"skipped"`.
    #[getter]
    fn verdict(&self) -> &'static str {
        match self.inner.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        }
    }

    #[getter]
    fn passed(&self) -> bool {
        self.inner.passed()
    }

    #[getter]
    fn unverified_hypothesis(&self) -> bool {
        self.inner.unverified_hypothesis
    }

    #[getter]
    fn failures(&self) -> Vec<String> {
        self.inner.failures()
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.inner.notes.clone()
    }

    /// A full report around this check, as JSON.
    fn to_json(&self) -> String {
        let mut r = Report::new(&self.inner.name, "");
        r.add_check(self.inner.clone());
        emit_report(&r, Format::Json)
    }

    fn __repr__(&self) -> String {
        format!("CheckResult({:?}, {})", self.inner.name, self.verdict())
    }
}

/// Homology dimensions `{(d, w): dim}` at the interior degrees of the window.
#[pyfunction]
#[pyo3(signature = (pres, complex, degrees, weights, reduced = false, hodge_r = 0))]
fn homology(
    py: Python<'_>,
    pres: &PyPresentation,
    complex: &str,
    degrees: (i64, i64),
    weights: (u32, u32),
    reduced: bool,
    hodge_r: u32,
) -> PyResult<BTreeMap<(i64, u32), usize>> {
    let kind: ComplexKind = complex.parse().map_err(to_py)?;
    let p = pres.inner.clone();
    py.detach(|| theorems::homology_of(&p, kind, reduced, hodge_r, &Window::new(degrees, weights)))
        .map(|(_, t)| t)
        .map_err(to_py)
}

/// Runs a named check: structural, homotopy, pi-qiso, master-diagram,
/// cone-iso, feigin-tsygan, cc-clambda, hodge, periodic or sbi.
#[pyfunction]
#[pyo3(signature = (pres, which, degrees, weights, n_max = 3, hodge_r = 1, target = None))]
#[allow(clippy::too_many_arguments)]
fn check(
    py: Python<'_>,
    pres: &PyPresentation,
    which: &str,
    degrees: (i64, i64),
    weights: (u32, u32),
    n_max: u32,
    hodge_r: u32,
    target: Option<&PyPresentation>,
) -> PyResult<PyCheck> {
    let p = pres.inner.clone();
    let t = target.map(|t| t.inner.clone());
    let w = Window::new(degrees, weights);
    py.detach(|| theorems::run_named_check(which, &p, t.as_ref(), &w, n_max, hodge_r))
        .map(|inner| PyCheck { inner })
        .map_err(to_py)
}

#[pymodule]
fn dgcyc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPresentation>()?;
    m.add_class::<PyCheck>()?;
    m.add_function(wrap_pyfunction!(homology, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
