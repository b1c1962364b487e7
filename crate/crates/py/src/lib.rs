// SPDX-License-Identifier: Apache-2.0

//! Python bindings.

use std::path::PathBuf;
use std::sync::Arc;

use dpip_core::dpip::{self as core_dpip, AdviceBundle, SwitchConfig};
use dpip_core::nf::{self, FieldElement};
use dpip_core::{quadlab, Error};
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(dpip, MaxTrialsExceeded, PyException);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::MaxTrialsExceeded(_) => MaxTrialsExceeded::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(frozen, from_py_object, name = "NumberField")]
#[derive(Clone)]
struct PyNumberField {
    inner: Arc<nf::NumberField>,
}

#[pymethods]
impl PyNumberField {
    /// `poly` lists the coefficients of a monic polynomial, constant term first.
    #[new]
    fn new(poly: Vec<BigInt>) -> PyResult<Self> {
        let inner = nf::NumberField::new(poly).map_err(py_err)?;
        Ok(PyNumberField { inner: Arc::new(inner) })
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        let inner = dpip_core::io::load_field(&path).map_err(py_err)?;
        Ok(PyNumberField { inner: Arc::new(inner) })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn disc(&self) -> BigInt {
        self.inner.disc().clone()
    }

    #[getter]
    fn defining_poly(&self) -> Vec<BigInt> {
        self.inner.defining_poly().to_vec()
    }

    /// Prime ideals above `p` with their ramification indices.
    fn factor(&self, p: BigInt) -> PyResult<Vec<(PyPrimeIdeal, u32)>> {
        let fac = nf::kummer_dedekind(&self.inner, &p).map_err(py_err)?;
        Ok(fac.into_iter().map(|(inner, e)| (PyPrimeIdeal { inner }, e)).collect())
    }

    fn ideal(&self, generators: Vec<Vec<BigInt>>) -> PyResult<PyIdeal> {
        PyIdeal::new(self, generators)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("NumberField({})", self.inner)
    }
}

#[pyclass(frozen, from_py_object, name = "Ideal")]
#[derive(Clone)]
struct PyIdeal {
    inner: nf::Ideal,
}

#[pymethods]
impl PyIdeal {
    /// Ideal generated by integral elements given in power-basis coordinates.
    #[new]
    fn new(field: &PyNumberField, generators: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let gens: Vec<FieldElement> = generators.into_iter().map(FieldElement::integral).collect();
        let inner = nf::Ideal::from_generators(&field.inner, &gens).map_err(py_err)?;
        Ok(PyIdeal { inner })
    }

    #[staticmethod]
    fn load(path: PathBuf, field: &PyNumberField) -> PyResult<Self> {
        let inner = dpip_core::io::load_ideal(&path, &field.inner).map_err(py_err)?;
        Ok(PyIdeal { inner })
    }

    #[getter]
    fn field(&self) -> PyNumberField {
        PyNumberField { inner: self.inner.field().clone() }
    }

    #[getter]
    fn hnf(&self) -> Vec<Vec<BigInt>> {
        self.inner.hnf().clone()
    }

    #[getter]
    fn denominator(&self) -> BigInt {
        self.inner.denominator().clone()
    }

    /// Norm as `(numerator, denominator)`.
    #[getter]
    fn norm(&self) -> (BigInt, BigInt) {
        let n = self.inner.norm();
        (n.numer().clone(), n.denom().clone())
    }

    fn contains(&self, element: Vec<BigInt>) -> PyResult<bool> {
        let d = self.inner.degree();
        if element.len() != d {
            return Err(py_err(Error::DimensionMismatch { expected: d, got: element.len() }));
        }
        Ok(self.inner.contains(&FieldElement::integral(element)))
    }

    fn inverse(&self) -> PyResult<PyIdeal> {
        Ok(PyIdeal { inner: self.inner.inverse().map_err(py_err)? })
    }

    fn divide(&self, divisor: &PyIdeal) -> PyResult<PyIdeal> {
        Ok(PyIdeal { inner: self.inner.divide(&divisor.inner).map_err(py_err)? })
    }

    /// The prime ideal this ideal equals, if any.
    fn as_prime(&self) -> Option<PyPrimeIdeal> {
        nf::is_prime_ideal(&self.inner).map(|inner| PyPrimeIdeal { inner })
    }

    fn __mul__(&self, other: &PyIdeal) -> PyResult<PyIdeal> {
        Ok(PyIdeal { inner: self.inner.mul(&other.inner).map_err(py_err)? })
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Ideal({})", self.inner)
    }
}

#[pyclass(frozen, from_py_object, name = "PrimeIdeal")]
#[derive(Clone)]
struct PyPrimeIdeal {
    inner: nf::PrimeIdeal,
}

#[pymethods]
impl PyPrimeIdeal {
    /// The prime `(p, g(θ))` for a monic factor `g` of the defining polynomial mod `p`.
    #[new]
    fn new(field: &PyNumberField, p: BigInt, gen_poly: Vec<BigInt>) -> PyResult<Self> {
        let inner = nf::PrimeIdeal::new(&field.inner, p, gen_poly).map_err(py_err)?;
        Ok(PyPrimeIdeal { inner })
    }

    #[getter]
    fn p(&self) -> BigInt {
        self.inner.p().clone()
    }

    #[getter]
    fn gen_poly(&self) -> Vec<BigInt> {
        self.inner.gen_poly().to_vec()
    }

    #[getter]
    fn residue_degree(&self) -> usize {
        self.inner.res_degree()
    }

    #[getter]
    fn ramification_index(&self) -> u32 {
        self.inner.ram_index()
    }

    #[getter]
    fn norm(&self) -> BigInt {
        self.inner.norm()
    }

    fn to_ideal(&self) -> PyIdeal {
        PyIdeal { inner: self.inner.to_ideal() }
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("PrimeIdeal{}", self.inner)
    }
}

#[pyclass(frozen, name = "Advice")]
struct PyAdvice {
    inner: AdviceBundle,
}

#[pymethods]
impl PyAdvice {
    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(PyAdvice { inner: AdviceBundle::load(&path).map_err(py_err)? })
    }

    fn store(&self, path: PathBuf) -> PyResult<()> {
        self.inner.store(&path).map_err(py_err)
    }

    #[getter]
    fn field(&self) -> PyNumberField {
        PyNumberField { inner: self.inner.field().clone() }
    }

    /// Degrees of the subfield polynomials.
    #[getter]
    fn degrees(&self) -> Vec<usize> {
        self.inner.subfields().iter().map(|s| s.q).collect()
    }

    #[getter]
    fn s(&self) -> Vec<PyPrimeIdeal> {
        self.inner.s().iter().cloned().map(|inner| PyPrimeIdeal { inner }).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.t()
    }
}

#[pyclass(frozen, get_all, name = "Decision")]
struct PyDecision {
    principal: bool,
    reason: String,
    switches_used: usize,
    witness_prime: Option<PyPrimeIdeal>,
}

#[pymethods]
impl PyDecision {
    fn __bool__(&self) -> bool {
        self.principal
    }

    fn __repr__(&self) -> String {
        let v = if self.principal { "Yes" } else { "No" };
        format!("Decision({v}, switches_used={}, reason={:?})", self.switches_used, self.reason)
    }
}

impl From<core_dpip::Decision> for PyDecision {
    fn from(d: core_dpip::Decision) -> Self {
        PyDecision {
            principal: d.verdict == core_dpip::Verdict::Yes,
            reason: d.reason.to_string(),
            switches_used: d.switches_used,
            witness_prime: d.witness_prime.map(|inner| PyPrimeIdeal { inner }),
        }
    }
}

/// Decide principality of `ideal` against `advice`.
#[pyfunction]
#[pyo3(signature = (ideal, advice, bound = None, max_trials = None, seed = SwitchConfig::DEFAULT_SEED))]
fn decide(
    py: Python<'_>,
    ideal: &PyIdeal,
    advice: &PyAdvice,
    bound: Option<BigInt>,
    max_trials: Option<usize>,
    seed: u64,
) -> PyResult<PyDecision> {
    let defaults = SwitchConfig::for_field(ideal.inner.field());
    let cfg = SwitchConfig::new(
        bound.unwrap_or_else(|| defaults.bound().clone()),
        max_trials.unwrap_or(defaults.max_trials()),
        seed,
    )
    .map_err(py_err)?;
    let (i, a) = (&ideal.inner, &advice.inner);
    let d = py.detach(|| core_dpip::general_ideal_dpip(i, a, &cfg)).map_err(py_err)?;
    Ok(d.into())
}

/// Prime ideals above `p` in `field`.
#[pyfunction]
fn factor(field: &PyNumberField, p: BigInt) -> PyResult<Vec<(PyPrimeIdeal, u32)>> {
    field.factor(p)
}

/// Genus advice for the imaginary quadratic field of discriminant `disc`.
#[pyfunction]
fn genus_advice(disc: BigInt) -> PyResult<PyAdvice> {
    Ok(PyAdvice { inner: quadlab::genus_advice(&disc).map_err(py_err)? })
}

/// Principality by reduction of binary quadratic forms.
#[pyfunction]
fn is_principal_quad(ideal: &PyIdeal) -> PyResult<bool> {
    let disc = ideal.inner.field().disc().clone();
    quadlab::is_principal_quad(&ideal.inner, &disc).map_err(py_err)
}

#[pymodule]
fn dpip(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNumberField>()?;
    m.add_class::<PyIdeal>()?;
    m.add_class::<PyPrimeIdeal>()?;
    m.add_class::<PyAdvice>()?;
    m.add_class::<PyDecision>()?;
    m.add("MaxTrialsExceeded", m.py().get_type::<MaxTrialsExceeded>())?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add_function(wrap_pyfunction!(genus_advice, m)?)?;
    m.add_function(wrap_pyfunction!(is_principal_quad, m)?)?;
    Ok(())
}
