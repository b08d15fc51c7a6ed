//! Python bindings: `EigenBasis`, `FrftOperator`, the centered DFT and the
//! scalar helpers. Vectors cross the boundary as lists ordered by `k` in `I_N`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use dft_hermite as core;
use dft_hermite::{DftDimension, GridVector};

fn value_error(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn dimension(n: usize) -> PyResult<DftDimension> {
    DftDimension::new(n).map_err(value_error)
}

/// Places `values` on `I_N` with `N = values.len()`.
pub fn to_grid<T>(values: Vec<T>) -> Result<GridVector<T>, core::Error> {
    let dim = DftDimension::new(values.len())?;
    GridVector::from_values(dim, values)
}

/// Grid indices `k` of `I_N`, ascending.
#[pyfunction]
fn indices(n: usize) -> PyResult<Vec<i64>> {
    Ok(dimension(n)?.indices().collect())
}

/// Unitary centered DFT of a complex sequence indexed by `I_N`.
#[pyfunction]
fn centered_dft(values: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
    let a = to_grid(values).map_err(value_error)?;
    Ok(core::centered_dft(&a).into_values())
}

/// `S(0), ..., S(2N)` with `S(k) = prod_{j<=k} 2 sin(pi j / N)`.
#[pyfunction]
fn sine_products(n: usize) -> PyResult<Vec<f64>> {
    Ok(core::SineProductTable::build(dimension(n)?)
        .values()
        .to_vec())
}

#[pyfunction]
fn qbinomial_identity_residual(n: usize, m: usize, k: usize) -> PyResult<f64> {
    core::qbinomial_identity_residual(n, m, k).map_err(value_error)
}

/// Normalised Hermite function `psi_n(x)`.
#[pyfunction]
fn psi(n: usize, x: f64) -> f64 {
    core::psi(n, x)
}

#[pyfunction]
fn u0_asymptotic(n: usize, k: i64) -> PyResult<f64> {
    core::u0_asymptotic(dimension(n)?, k).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (values, zero_tol = core::DEFAULT_ZERO_TOL))]
fn zero_crossings(values: Vec<f64>, zero_tol: f64) -> PyResult<usize> {
    Ok(core::zero_crossings(
        &to_grid(values).map_err(value_error)?,
        zero_tol,
    ))
}

#[pyfunction]
#[pyo3(signature = (values, zero_tol = core::DEFAULT_ZERO_TOL))]
fn signal_length(values: Vec<f64>, zero_tol: f64) -> PyResult<usize> {
    core::signal_length(&to_grid(values).map_err(value_error)?, zero_tol).map_err(value_error)
}

/// Runs the invariant suite; returns `{check: {"pass": bool, "max_residual": float}}`.
#[pyfunction]
#[pyo3(signature = (n, tolerance = 1e-9))]
fn verify<'py>(py: Python<'py>, n: usize, tolerance: f64) -> PyResult<Bound<'py, PyDict>> {
    let report = py
        .detach(|| core::run_verification(DftDimension::new(n)?, tolerance))
        .map_err(value_error)?;
    let out = PyDict::new(py);
    for (name, check) in &report.checks {
        let entry = PyDict::new(py);
        entry.set_item("pass", check.pass)?;
        entry.set_item("max_residual", check.max_residual)?;
        if let Some(d) = check.dims {
            entry.set_item("dims", d.to_vec())?;
        }
        out.set_item(name, entry)?;
    }
    Ok(out)
}

/// Orthonormal eigenbasis `phi_0..phi_{N-1}` of the centered DFT.
#[pyclass(name = "EigenBasis", frozen)]
pub struct PyEigenBasis {
    inner: core::EigenBasis,
}

#[pymethods]
impl PyEigenBasis {
    #[new]
    fn new(py: Python<'_>, n: usize) -> PyResult<Self> {
        let dim = dimension(n)?;
        let inner = py
            .detach(|| core::EigenBasis::build(dim))
            .map_err(value_error)?;
        Ok(Self { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.dim().size()
    }

    /// `sqrt(2 pi / N)`
    #[getter]
    fn epsilon(&self) -> f64 {
        self.inner.dim().epsilon()
    }

    /// `p(n)` with `F phi_n = (-i)^p(n) phi_n`.
    #[getter]
    fn exponents(&self) -> Vec<u32> {
        self.inner.exponents().into_iter().map(u32::from).collect()
    }

    /// Multiplicities of the eigenvalues `1, -i, -1, i`.
    #[getter]
    fn dimensions(&self) -> (usize, usize, usize, usize) {
        let [w, x, y, z] = self.inner.dimensions();
        (w, x, y, z)
    }

    fn indices(&self) -> Vec<i64> {
        self.inner.dim().indices().collect()
    }

    fn phi(&self, n: usize) -> PyResult<Vec<f64>> {
        if n >= self.inner.len() {
            return Err(PyValueError::new_err(format!("index {n} out of range")));
        }
        Ok(self.inner.phi(n).values().to_vec())
    }

    fn vectors(&self) -> Vec<Vec<f64>> {
        self.inner
            .vectors()
            .iter()
            .map(|v| v.values().to_vec())
            .collect()
    }

    /// `(sup_error, argmax_k, sign_flipped)` against `psi_n(eps k)` on `|k| <= 2L`.
    fn convergence(&self, order: usize) -> PyResult<(f64, i64, bool)> {
        let ev = core::HermiteEvaluator::new(order).map_err(value_error)?;
        let r = core::convergence_report(&self.inner, &ev, order).map_err(value_error)?;
        Ok((r.sup_error, r.argmax_k, r.sign_flipped))
    }

    fn zero_share(&self) -> f64 {
        core::zero_share(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("EigenBasis(n={})", self.inner.dim().size())
    }
}

/// Fractional DFT of order `alpha`; `alpha = 1` is the centered DFT.
#[pyclass(name = "FrftOperator", frozen)]
pub struct PyFrftOperator {
    inner: core::FrftOperator,
}

#[pymethods]
impl PyFrftOperator {
    #[new]
    fn new(basis: &PyEigenBasis, alpha: f64) -> PyResult<Self> {
        let inner = core::FrftOperator::build(&basis.inner, alpha).map_err(value_error)?;
        Ok(Self { inner })
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.dim().size()
    }

    fn apply(&self, values: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        let a = to_grid(values).map_err(value_error)?;
        Ok(self.inner.apply(&a).map_err(value_error)?.into_values())
    }

    /// Rows `l`, columns `k`, both in `I_N` order.
    fn matrix(&self) -> Vec<Vec<Complex64>> {
        let n = self.inner.dim().size();
        self.inner
            .matrix()
            .chunks_exact(n)
            .map(<[Complex64]>::to_vec)
            .collect()
    }

    fn unitarity_deviation(&self) -> f64 {
        self.inner.unitarity_deviation()
    }

    fn __repr__(&self) -> String {
        format!(
            "FrftOperator(n={}, alpha={})",
            self.inner.dim().size(),
            self.inner.alpha()
        )
    }
}

#[pymodule]
fn dft_hermite_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEigenBasis>()?;
    m.add_class::<PyFrftOperator>()?;
    m.add_function(wrap_pyfunction!(indices, m)?)?;
    m.add_function(wrap_pyfunction!(centered_dft, m)?)?;
    m.add_function(wrap_pyfunction!(sine_products, m)?)?;
    m.add_function(wrap_pyfunction!(qbinomial_identity_residual, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(u0_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(zero_crossings, m)?)?;
    m.add_function(wrap_pyfunction!(signal_length, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
