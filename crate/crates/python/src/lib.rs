//! Python bindings for `trinomax`.
//!
//! Results are returned as plain Python values (floats, tuples, lists and
//! dicts) except for [`PyTrinomial`], which wraps the core type.

#![allow(clippy::type_complexity)]

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use trinomax::{Complex64, Multiplier, Trinomial};

fn err(e: trinomax::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// `r1 e^{i(t1 + λ1 x)} + r2 e^{i(t2 + λ2 x)} + r3 e^{i(t3 + λ3 x)}`.
#[pyclass(name = "Trinomial", module = "trinomax_py", from_py_object)]
#[derive(Clone)]
pub struct PyTrinomial {
    inner: Trinomial,
}

#[pymethods]
impl PyTrinomial {
    #[new]
    #[pyo3(signature = (freqs, moduli, phases = [0.0, 0.0, 0.0]))]
    fn new(freqs: [i64; 3], moduli: [f64; 3], phases: [f64; 3]) -> PyResult<Self> {
        Trinomial::new(freqs, moduli, phases).map(|inner| PyTrinomial { inner }).map_err(err)
    }

    #[getter]
    fn freqs(&self) -> [i64; 3] {
        self.inner.freqs
    }

    #[getter]
    fn moduli(&self) -> [f64; 3] {
        self.inner.moduli
    }

    #[getter]
    fn phases(&self) -> [f64; 3] {
        self.inner.phases
    }

    fn __call__(&self, x: f64) -> Complex64 {
        self.inner.evaluate(x)
    }

    fn evaluate(&self, x: f64) -> Complex64 {
        self.inner.evaluate(x)
    }

    /// Period of `|T|`, `2π/d`.
    fn period(&self) -> f64 {
        self.inner.period()
    }

    /// `d, k, l, m, D, tau, signed_tau` as a dict.
    fn stats<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let s = trinomax::derive_spectrum_stats(&self.inner).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("d", s.d)?;
        d.set_item("k", s.k)?;
        d.set_item("l", s.l)?;
        d.set_item("m", s.m)?;
        d.set_item("D", s.diameter_quotient)?;
        d.set_item("tau", s.tau)?;
        d.set_item("signed_tau", s.signed_tau)?;
        Ok(d)
    }

    /// `(k, l, r1, r2, r3, t)` of the reduced form.
    fn reduced(&self) -> PyResult<(u64, u64, f64, f64, f64, f64)> {
        let (r, _, _) = trinomax::canonical_reduction(&self.inner).map_err(err)?;
        Ok((r.k, r.l, r.r1, r.r2, r.r3, r.t))
    }

    /// Maximum modulus points: dict with `value`, `points`, `multiplicity`,
    /// `classification`, `s` and `period`.
    fn max_points<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let res = trinomax::max_points_global(&self.inner).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("value", res.value())?;
        d.set_item("points", res.argmaxes())?;
        d.set_item("multiplicity", res.multiplicity)?;
        d.set_item("classification", format!("{:?}", res.classification))?;
        d.set_item("s", res.s)?;
        d.set_item("period", res.period)?;
        Ok(d)
    }

    fn max_modulus(&self) -> PyResult<f64> {
        Ok(trinomax::max_points_global(&self.inner).map_err(err)?.value())
    }

    /// Brute-force grid search: `(value, argmaxes)`.
    #[pyo3(signature = (grid = 4096, tol = 1e-12))]
    fn brute_max(&self, grid: usize, tol: f64) -> (f64, Vec<f64>) {
        let rep = trinomax::brute_max(&self.inner, grid, tol);
        (rep.value, rep.argmaxes)
    }

    /// The trinomial with the multiplier `(u1, u2, u3)` applied.
    fn apply(&self, u: [f64; 3]) -> Self {
        PyTrinomial { inner: self.inner.apply(&Multiplier::from(u)) }
    }

    /// Points of the curve farthest from `center`: list of `(x, distance)`.
    fn farthest_points(&self, center: Complex64) -> PyResult<Vec<(f64, f64)>> {
        trinomax::farthest_points(&self.inner, center).map_err(err)
    }

    /// Hypotrochoid samples `(x, z)` and the cusp count (or `None`).
    #[pyo3(signature = (n = 512))]
    fn hypotrochoid(&self, n: usize) -> PyResult<(Vec<(f64, Complex64)>, Option<u64>)> {
        let c = trinomax::hypotrochoid_sample(&self.inner, n).map_err(err)?;
        Ok((c.samples, c.cusp_count))
    }

    fn __repr__(&self) -> String {
        format!("Trinomial(freqs={:?}, moduli={:?}, phases={:?})", self.inner.freqs, self.inner.moduli, self.inner.phases)
    }
}

/// Sidon constant of a three-element spectrum.
#[pyfunction]
fn sidon_constant(freqs: [i64; 3]) -> PyResult<f64> {
    Ok(trinomax::sidon_constant(freqs).map_err(err)?.0)
}

/// Norm of the multiplier `(u1, u2, u3)` and its witness trinomial.
#[pyfunction]
fn multiplier_norm(freqs: [i64; 3], u: [f64; 3]) -> PyResult<(f64, PyTrinomial)> {
    let (n, w) = trinomax::multiplier_norm(freqs, &Multiplier::from(u)).map_err(err)?;
    Ok((n, PyTrinomial { inner: w.trinomial() }))
}

/// Brute-force Sidon constant.
#[pyfunction]
#[pyo3(signature = (freqs, grid_phases = 256, simplex_n = 40))]
fn brute_sidon(freqs: [i64; 3], grid_phases: usize, simplex_n: usize) -> f64 {
    trinomax::brute_sidon(freqs, grid_phases, simplex_n)
}

/// `(real, complex)` unconditional constants of the basis.
#[pyfunction]
fn unconditional_constants(freqs: [i64; 3]) -> PyResult<(f64, f64)> {
    let u = trinomax::unconditional_constants(freqs).map_err(err)?;
    Ok((u.real, u.complex))
}

/// Maximum modulus of `r1 e^{-ikx} + r2 e^{it} + r3 e^{ilx}`.
#[pyfunction]
fn fstar(k: u64, l: u64, r: [f64; 3], t: f64) -> PyResult<f64> {
    trinomax::fstar(k, l, r, t).map_err(err)
}

/// Rows `(tau, t, fstar, ratio, bound)` over `n` uniform values of `τ`.
#[pyfunction]
#[pyo3(signature = (k, l, r, n = 64))]
fn sweep(k: u64, l: u64, r: [f64; 3], n: usize) -> PyResult<Vec<(f64, f64, f64, f64, f64)>> {
    let rows = trinomax::sweep(k, l, r, n).map_err(err)?;
    Ok(rows.into_iter().map(|r| (r.tau, r.t, r.fstar, r.ratio, r.bound)).collect())
}

#[pyfunction]
fn closed_form_k1_l1(r1: f64, r2: f64, r3: f64) -> PyResult<(f64, Vec<f64>)> {
    trinomax::closed_form_k1_l1(r1, r2, r3).map_err(err)
}

#[pyfunction]
fn closed_form_k2_l1(r1: f64, r2: f64, r3: f64) -> PyResult<(f64, Vec<f64>)> {
    trinomax::closed_form_k2_l1(r1, r2, r3).map_err(err)
}

/// The trinomial with spectrum `freqs` whose maximum modulus points are
/// exactly `x` and `y`, with values `vx` and `vy` there.
#[pyfunction]
fn reconstruct_from_two_points(freqs: [i64; 3], x: f64, y: f64, vx: Complex64, vy: Complex64) -> PyResult<PyTrinomial> {
    trinomax::reconstruct_from_two_points(freqs, x, y, vx, vy)
        .map(|inner| PyTrinomial { inner })
        .map_err(err)
}

#[pymodule]
fn trinomax_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTrinomial>()?;
    m.add_function(wrap_pyfunction!(sidon_constant, m)?)?;
    m.add_function(wrap_pyfunction!(multiplier_norm, m)?)?;
    m.add_function(wrap_pyfunction!(brute_sidon, m)?)?;
    m.add_function(wrap_pyfunction!(unconditional_constants, m)?)?;
    m.add_function(wrap_pyfunction!(fstar, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_k1_l1, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_k2_l1, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct_from_two_points, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
