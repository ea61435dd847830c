//! Python bindings: `import sbmotive`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use sbmotive_core::expr::{eval_str, Mode};
use sbmotive_core::motives::{decompose_with, DecomposeOptions, DecompositionReport};
use sbmotive_core::{verify as corpus, GeometrySpec, GrassRing, ProdRing};

fn value_error(e: sbmotive_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// `Y = X(p^m, D)` for a division algebra `D` of degree `p^n`.
#[pyclass(
    name = "GeometrySpec",
    module = "sbmotive",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
struct PySpec(GeometrySpec);

#[pymethods]
impl PySpec {
    #[new]
    fn new(p: u32, n: u32, m: u32) -> PyResult<Self> {
        GeometrySpec::new(p, n, m).map(PySpec).map_err(value_error)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.0.p
    }
    #[getter]
    fn n(&self) -> u32 {
        self.0.n
    }
    #[getter]
    fn m(&self) -> u32 {
        self.0.m
    }
    #[getter]
    fn dim_x(&self) -> u32 {
        self.0.dim_x()
    }
    #[getter]
    fn dim_y(&self) -> u32 {
        self.0.dim_y()
    }
    #[getter]
    fn shift_range(&self) -> u32 {
        self.0.shift_range()
    }

    fn __repr__(&self) -> String {
        format!(
            "GeometrySpec(p={}, n={}, m={})",
            self.0.p, self.0.n, self.0.m
        )
    }
}

#[pyclass(name = "DecompositionReport", module = "sbmotive", frozen)]
struct PyReport(DecompositionReport);

#[pymethods]
impl PyReport {
    #[getter]
    fn spec(&self) -> PySpec {
        PySpec(self.0.spec)
    }
    /// `a_0, …, a_D`.
    #[getter]
    fn multiplicities(&self) -> Vec<u32> {
        self.0.multiplicities.clone()
    }
    /// Residual Poincaré polynomial, coefficient list from `t^0`.
    #[getter]
    fn residual(&self) -> Vec<i64> {
        self.0.residual.coeffs().to_vec()
    }
    #[getter]
    fn residual_rank(&self) -> i64 {
        self.0.residual.eval_one()
    }
    #[getter]
    fn diagnostics<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = self.0.diagnostics;
        let out = PyDict::new(py);
        out.set_item("residual_nonnegative", d.residual_nonnegative)?;
        out.set_item("residual_palindromic", d.residual_palindromic)?;
        out.set_item("residual_unit_ends", d.residual_unit_ends)?;
        out.set_item("duality_consistent", d.duality_consistent)?;
        Ok(out)
    }

    #[pyo3(signature = (elapsed_ms = 0))]
    fn to_json(&self, elapsed_ms: u64) -> String {
        serde_json::to_string(&self.0.to_json(elapsed_ms)).expect("report serializes")
    }

    fn __repr__(&self) -> String {
        format!(
            "DecompositionReport(p={}, n={}, m={}, multiplicities={:?}, residual_rank={})",
            self.0.spec.p,
            self.0.spec.n,
            self.0.spec.m,
            self.0.multiplicities,
            self.0.residual.eval_one()
        )
    }
}

#[pyfunction]
#[pyo3(signature = (spec, kmax = None))]
fn decompose(py: Python<'_>, spec: &PySpec, kmax: Option<u32>) -> PyResult<PyReport> {
    let spec = spec.0;
    let opts = DecomposeOptions {
        k_max: kmax,
        ..Default::default()
    };
    py.detach(|| decompose_with(&spec, opts))
        .map(PyReport)
        .map_err(value_error)
}

/// `[dim V_0, …, dim V_kmax]`.
#[pyfunction]
fn v_dims(py: Python<'_>, spec: &PySpec, kmax: u32) -> PyResult<Vec<usize>> {
    let spec = spec.0;
    py.detach(|| sbmotive_core::subring::v_dims(&ProdRing::new(spec), kmax))
        .map_err(value_error)
}

/// Coefficients of the Gaussian binomial `[n choose k]_t`.
#[pyfunction]
fn poincare_grassmannian(k: u32, n: u32) -> PyResult<Vec<i64>> {
    sbmotive_core::motives::poincare_grassmannian(k, n)
        .map(|p| p.coeffs().to_vec())
        .map_err(value_error)
}

/// Evaluates `expression` in `Ch(G(k, n); F_p)`.
#[pyfunction]
fn eval_grassmann(k: u32, n: u32, p: u32, expression: &str) -> PyResult<String> {
    let mode = Mode::Grassmann(GrassRing::grassmannian(k, n, p).map_err(value_error)?);
    eval_str(expression, &mode)
        .map(|v| v.to_string())
        .map_err(value_error)
}

/// Evaluates `expression` in `Ch(X × Y)` of the split geometry.
#[pyfunction]
fn eval_product(spec: &PySpec, expression: &str) -> PyResult<String> {
    let mode = Mode::Product(ProdRing::new(spec.0));
    eval_str(expression, &mode)
        .map(|v| v.to_string())
        .map_err(value_error)
}

/// Runs the worked-example corpus, or a single case; one dict per case.
#[pyfunction]
#[pyo3(signature = (case = None))]
fn verify<'py>(py: Python<'py>, case: Option<String>) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let outcomes = match case {
        Some(id) => vec![py.detach(|| corpus::run_case(&id)).map_err(value_error)?],
        None => py.detach(corpus::run_all),
    };
    outcomes
        .into_iter()
        .map(|o| {
            let d = PyDict::new(py);
            d.set_item("id", o.id)?;
            d.set_item("source", o.source)?;
            d.set_item("passed", o.passed)?;
            d.set_item("detail", o.detail)?;
            d.set_item("elapsed_ms", o.elapsed_ms)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
#[pyo3(name = "sbmotive")]
fn sbmotive_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpec>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(v_dims, m)?)?;
    m.add_function(wrap_pyfunction!(poincare_grassmannian, m)?)?;
    m.add_function(wrap_pyfunction!(eval_grassmann, m)?)?;
    m.add_function(wrap_pyfunction!(eval_product, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
