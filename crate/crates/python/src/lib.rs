//! Python bindings. Exact values come back as `int` and `fractions.Fraction`.

use charpoly_core::algebra::MultiPoly;
use charpoly_core::kerov::{self, KerovExpansion};
use charpoly_core::stanley::{self, ShapeRing};
use charpoly_core::verify::{self, Status};
use charpoly_core::{characters, shift};
use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: charpoly_core::Error) -> PyErr {
    match e {
        charpoly_core::Error::Consistency(_) | charpoly_core::Error::RankDeficient(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// An integer partition, parts weakly decreasing.
#[pyclass(frozen, eq, hash, skip_from_py_object, name = "Partition")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPartition(charpoly_core::Partition);

#[pymethods]
impl PyPartition {
    #[new]
    fn new(parts: Vec<usize>) -> PyResult<Self> {
        charpoly_core::Partition::new(parts).map(PyPartition).map_err(err)
    }

    /// Every partition of `n`.
    #[staticmethod]
    fn all(n: usize) -> Vec<PyPartition> {
        charpoly_core::Partition::all(n).map(PyPartition).collect()
    }

    #[getter]
    fn parts(&self) -> Vec<usize> {
        self.0.parts().to_vec()
    }

    fn size(&self) -> usize {
        self.0.size()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn conjugate(&self) -> PyPartition {
        PyPartition(self.0.conjugate())
    }

    fn contents(&self) -> Vec<i64> {
        self.0.contents()
    }

    fn dimension(&self) -> BigInt {
        self.0.dimension()
    }

    /// `(minima, maxima)` of the rotated diagram.
    fn interlacing(&self) -> (Vec<i64>, Vec<i64>) {
        let c = self.0.interlacing();
        (c.minima, c.maxima)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition([{}])", self.0)
    }
}

/// `p[i]` rows of length `q[i]`, `q` strictly decreasing.
#[pyclass(frozen, skip_from_py_object, name = "MultiRect")]
#[derive(Clone)]
struct PyMultiRect(charpoly_core::MultiRect);

#[pymethods]
impl PyMultiRect {
    #[new]
    fn new(p: Vec<usize>, q: Vec<usize>) -> PyResult<Self> {
        charpoly_core::MultiRect::new(p, q).map(PyMultiRect).map_err(err)
    }

    #[getter]
    fn p(&self) -> Vec<usize> {
        self.0.p().to_vec()
    }

    #[getter]
    fn q(&self) -> Vec<usize> {
        self.0.q().to_vec()
    }

    fn size(&self) -> usize {
        self.0.size()
    }

    fn expand(&self) -> PyPartition {
        PyPartition(self.0.expand())
    }

    fn __repr__(&self) -> String {
        format!("MultiRect({})", self.0)
    }
}

/// A polynomial with exact rational coefficients.
#[pyclass(frozen, name = "Polynomial")]
struct PyPolynomial {
    poly: MultiPoly,
    text: String,
}

impl PyPolynomial {
    fn from_expansion(e: &KerovExpansion) -> Self {
        PyPolynomial { poly: e.body.clone(), text: e.to_text() }
    }

    fn from_shape(ring: &ShapeRing, f: MultiPoly) -> Self {
        PyPolynomial { text: ring.to_text(&f), poly: f }
    }
}

#[pymethods]
impl PyPolynomial {
    #[getter]
    fn vars(&self) -> Vec<String> {
        self.poly.vars().names().to_vec()
    }

    /// `[(exponents, coefficient)]` in descending graded-lex order.
    fn terms(&self) -> Vec<(Vec<u32>, BigRational)> {
        self.poly.terms().rev().map(|(m, c)| (m.exps().to_vec(), c.clone())).collect()
    }

    /// Value at a point given in the order of `vars`.
    fn evaluate(&self, point: Vec<BigRational>) -> PyResult<BigRational> {
        self.poly.evaluate(&point).map_err(err)
    }

    fn is_positive(&self) -> bool {
        self.poly.is_positive()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.poly.to_json()).expect("serializable")
    }

    fn __str__(&self) -> String {
        self.text.clone()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.text)
    }
}

/// `chi_shape(cls)`.
#[pyfunction]
fn character(shape: &PyPartition, cls: &PyPartition) -> PyResult<BigInt> {
    characters::mn_character(&shape.0, &cls.0).map_err(err)
}

/// `chi_hat_shape(k 1^(n-k))`.
#[pyfunction]
fn normalized_character(shape: &PyPartition, k: usize) -> PyResult<BigRational> {
    characters::normalized_character(&shape.0, k).map_err(err)
}

/// `chi_hat_shape(mu 1^(n-k))`.
#[pyfunction]
fn normalized_character_class(shape: &PyPartition, mu: &PyPartition) -> PyResult<BigRational> {
    characters::normalized_character_class(&shape.0, &mu.0).map_err(err)
}

/// `[R_2, .., R_n]` of a diagram.
#[pyfunction]
fn free_cumulants(shape: &PyPartition, n: usize) -> PyResult<Vec<BigInt>> {
    kerov::free_cumulants(&shape.0, n).map(|c| c.from_two().to_vec()).map_err(err)
}

/// `Sigma_k` in the `"R"` or `"C"` basis.
#[pyfunction]
#[pyo3(signature = (k, basis = "R"))]
fn kerov_polynomial(k: usize, basis: &str) -> PyResult<PyPolynomial> {
    let e = match basis {
        "R" => kerov::kerov_polynomial(k),
        "C" => kerov::c_expansion(k),
        other => return Err(PyValueError::new_err(format!("basis must be \"R\" or \"C\", not {other:?}"))),
    }
    .map_err(err)?;
    Ok(PyPolynomial::from_expansion(&e))
}

/// `F_k` for `m` rectangles, or `(-1)^k F_k(p; -q)` with `negate_q`.
#[pyfunction]
#[pyo3(signature = (k, m, negate_q = false))]
fn stanley_polynomial(k: usize, m: usize, negate_q: bool) -> PyResult<PyPolynomial> {
    let ring = ShapeRing::new(m).map_err(err)?;
    let f = stanley::stanley_polynomial(k, m).map_err(err)?;
    let f = if negate_q { stanley::negate_q(&ring, &f, k) } else { f };
    Ok(PyPolynomial::from_shape(&ring, f))
}

/// `s*_lambda(x)`.
#[pyfunction]
fn shift_schur(lam: &PyPartition, x: Vec<BigRational>) -> PyResult<BigRational> {
    match shift::shift_schur_det(&lam.0, &x) {
        Err(charpoly_core::Error::Singular(_)) => shift::shift_schur_tableaux(&lam.0, &x).map_err(err),
        other => other.map_err(err),
    }
}

/// `p#_mu(lambda)`.
#[pyfunction]
fn p_sharp(mu: &PyPartition, lam: &PyPartition) -> PyResult<BigRational> {
    shift::p_sharp(&mu.0, &lam.0).map_err(err)
}

/// `[(index, description, status, detail)]` for the reproduction suite;
/// status is `"pass"`, `"fail"` or `"finding"`.
#[pyfunction]
fn verify_reference(py: Python<'_>) -> Vec<(usize, String, String, String)> {
    py.detach(verify::run_reference_suite)
        .into_iter()
        .map(|r| {
            let status = match r.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Finding => "finding",
            };
            (r.index, r.anchor.to_string(), status.to_string(), r.detail)
        })
        .collect()
}

#[pymodule]
fn charpoly(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_class::<PyMultiRect>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_function(wrap_pyfunction!(character, m)?)?;
    m.add_function(wrap_pyfunction!(normalized_character, m)?)?;
    m.add_function(wrap_pyfunction!(normalized_character_class, m)?)?;
    m.add_function(wrap_pyfunction!(free_cumulants, m)?)?;
    m.add_function(wrap_pyfunction!(kerov_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(stanley_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(shift_schur, m)?)?;
    m.add_function(wrap_pyfunction!(p_sharp, m)?)?;
    m.add_function(wrap_pyfunction!(verify_reference, m)?)?;
    Ok(())
}
