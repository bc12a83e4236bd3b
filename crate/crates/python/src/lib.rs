//! Python bindings: permutations and distances, exact counts, bounds and the
//! code construction with its decoder and codebook files.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use rankperm::construction::{self, codebook};
use rankperm::{bounds, enumeration, perm, Error};

create_exception!(pyrankperm, RankpermError, PyException);
create_exception!(pyrankperm, VerificationError, RankpermError);
create_exception!(pyrankperm, CapExceededError, RankpermError);

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Verification(_) | Error::Format(_) => VerificationError::new_err(msg),
        Error::CapExceeded { .. } => CapExceededError::new_err(msg),
        Error::Internal(_) => RankpermError::new_err(msg),
        _ => PyValueError::new_err(msg),
    }
}

trait OrPy<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> OrPy<T> for rankperm::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

/// A permutation of `1..=n` in one-line notation.
#[pyclass(
    name = "Permutation",
    module = "pyrankperm",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq)]
struct PyPermutation {
    inner: perm::Permutation,
}

impl From<perm::Permutation> for PyPermutation {
    fn from(inner: perm::Permutation) -> Self {
        PyPermutation { inner }
    }
}

#[pymethods]
impl PyPermutation {
    #[new]
    fn new(entries: Vec<u32>) -> PyResult<Self> {
        Ok(perm::Permutation::new(entries).py_err()?.into())
    }

    /// Parses `"2,1,4,3"`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(text.parse::<perm::Permutation>().py_err()?.into())
    }

    #[staticmethod]
    fn identity(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("n must be at least 1"));
        }
        Ok(perm::Permutation::identity(n).into())
    }

    #[staticmethod]
    fn from_inversion_vector(coords: Vec<u32>) -> PyResult<Self> {
        let x = perm::InversionVector::new(coords).py_err()?;
        Ok(perm::from_inversion_vector(&x).into())
    }

    #[getter]
    fn entries(&self) -> Vec<u32> {
        self.inner.entries().to_vec()
    }

    fn inverse(&self) -> Self {
        self.inner.inverse().into()
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    fn compose(&self, other: &PyPermutation) -> PyResult<Self> {
        Ok(self.inner.compose(&other.inner).py_err()?.into())
    }

    fn inversion_count(&self) -> u64 {
        perm::inversion_count(&self.inner)
    }

    fn inversion_vector(&self) -> PyResult<Vec<u32>> {
        Ok(perm::to_inversion_vector(&self.inner)
            .py_err()?
            .coords()
            .to_vec())
    }

    /// Exchanges the symbols `k` and `k + 1`.
    fn adjacent_transposition(&self, k: usize) -> PyResult<Self> {
        Ok(self.inner.adjacent_transposition(k).py_err()?.into())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Permutation([{}])",
            self.inner.to_string().replace(',', ", ")
        )
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }
}

#[pyfunction]
fn kendall_distance(a: &PyPermutation, b: &PyPermutation) -> PyResult<u64> {
    perm::kendall_distance(&a.inner, &b.inner).py_err()
}

#[pyfunction]
fn footrule(a: &PyPermutation, b: &PyPermutation) -> PyResult<u64> {
    perm::footrule(&a.inner, &b.inner).py_err()
}

#[pyfunction]
fn cayley_distance(a: &PyPermutation, b: &PyPermutation) -> PyResult<u64> {
    perm::cayley_distance(&a.inner, &b.inner).py_err()
}

/// ℓ1 distance between two inversion vectors.
#[pyfunction]
fn l1_distance(x: Vec<u32>, y: Vec<u32>) -> PyResult<u64> {
    let x = perm::InversionVector::new(x).py_err()?;
    let y = perm::InversionVector::new(y).py_err()?;
    perm::l1_distance(&x, &y).py_err()
}

/// `[K_n(0), …, K_n(N)]`: permutations of `n` with `k` inversions.
#[pyfunction]
fn weight_distribution(n: usize) -> PyResult<Vec<BigUint>> {
    Ok(enumeration::weight_distribution(n)
        .py_err()?
        .counts()
        .to_vec())
}

#[pyfunction]
fn kendall_ball_volume(n: usize, r: u64) -> PyResult<BigUint> {
    enumeration::kendall_ball_volume(n, r).py_err()
}

#[pyfunction]
fn q_count(n: usize, r: u64) -> PyResult<BigUint> {
    enumeration::q_count(n, r).py_err()
}

#[pyfunction]
fn exact_optimal_size(n: usize, d: u64) -> PyResult<u64> {
    enumeration::exact_optimal_size(n, d).py_err()
}

/// Every bound on `A(n, d)` as an ordered `dict[str, str]`.
#[pyfunction]
fn bounds_report<'py>(py: Python<'py>, n: usize, d: u64) -> PyResult<Bound<'py, PyDict>> {
    let report = bounds::bounds_report(n, d).py_err()?;
    let dict = PyDict::new(py);
    for (key, value) in report.to_record() {
        dict.set_item(key, value)?;
    }
    Ok(dict)
}

/// A constructed `t`-error-correcting code with its codebook.
#[pyclass(name = "RankCode", module = "pyrankperm", frozen)]
struct PyRankCode {
    inner: construction::RankCode,
}

#[pymethods]
impl PyRankCode {
    #[staticmethod]
    fn build(n: usize, t: u32) -> PyResult<Self> {
        Ok(PyRankCode {
            inner: construction::build_code(n, t).py_err()?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyRankCode {
            inner: codebook::from_str(text).py_err()?,
        })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(PyRankCode {
            inner: codebook::load(path).py_err()?,
        })
    }

    fn to_json(&self) -> String {
        codebook::to_string(&self.inner)
    }

    fn save(&self, path: &str) -> PyResult<()> {
        codebook::save(&self.inner, path).py_err()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn t(&self) -> u32 {
        self.inner.t()
    }

    #[getter]
    fn q(&self) -> Option<u64> {
        self.inner.q()
    }

    #[getter]
    fn m(&self) -> Option<u64> {
        self.inner.m()
    }

    #[getter]
    fn m_t(&self) -> u64 {
        self.inner.m_t()
    }

    #[getter]
    fn h(&self) -> Vec<u64> {
        self.inner.parity().h().to_vec()
    }

    #[getter]
    fn coset(&self) -> u64 {
        self.inner.coset()
    }

    #[getter]
    fn codebook(&self) -> Vec<PyPermutation> {
        self.inner
            .codebook()
            .iter()
            .cloned()
            .map(Into::into)
            .collect()
    }

    fn codeword(&self, index: usize) -> PyResult<PyPermutation> {
        Ok(self.inner.codeword(index).py_err()?.clone().into())
    }

    fn contains(&self, p: &PyPermutation) -> PyResult<bool> {
        self.inner.contains(&p.inner).py_err()
    }

    /// The corrected codeword, or `None` when the word is uncorrectable.
    fn decode(&self, received: &PyPermutation) -> PyResult<Option<PyPermutation>> {
        Ok(self.inner.decode(&received.inner).py_err()?.map(Into::into))
    }

    fn guaranteed_size(&self) -> BigUint {
        self.inner.guaranteed_size()
    }

    fn packing_efficiency(&self) -> f64 {
        self.inner.packing_efficiency()
    }

    fn min_kendall_distance(&self) -> u64 {
        self.inner.min_kendall_distance().value()
    }

    /// Raises `VerificationError` when a gate fails.
    fn verify(&self) -> PyResult<()> {
        self.inner.verify().py_err()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "RankCode(n={}, t={}, m_t={}, size={})",
            self.inner.n(),
            self.inner.t(),
            self.inner.m_t(),
            self.inner.len()
        )
    }
}

#[pyfunction]
fn build_code(n: usize, t: u32) -> PyResult<PyRankCode> {
    PyRankCode::build(n, t)
}

#[pymodule]
fn pyrankperm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyRankCode>()?;
    m.add_function(wrap_pyfunction!(kendall_distance, m)?)?;
    m.add_function(wrap_pyfunction!(footrule, m)?)?;
    m.add_function(wrap_pyfunction!(cayley_distance, m)?)?;
    m.add_function(wrap_pyfunction!(l1_distance, m)?)?;
    m.add_function(wrap_pyfunction!(weight_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(kendall_ball_volume, m)?)?;
    m.add_function(wrap_pyfunction!(q_count, m)?)?;
    m.add_function(wrap_pyfunction!(exact_optimal_size, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_report, m)?)?;
    m.add_function(wrap_pyfunction!(build_code, m)?)?;
    m.add("RankpermError", py.get_type::<RankpermError>())?;
    m.add("VerificationError", py.get_type::<VerificationError>())?;
    m.add("CapExceededError", py.get_type::<CapExceededError>())?;
    Ok(())
}
