//! Python bindings. Rationals go in as `int`, `str` ("p/q") or
//! `fractions.Fraction` and come back as `Fraction`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

use n2vx::classification::{self, ClassificationVerdict};
use n2vx::cli::{self, Command, Suite};
use n2vx::coset;
use n2vx::rational::{fmt_rational, parse_rational};
use n2vx::verma::{self, HighestWeightN2};
use n2vx::{ExactRational, HalfInt};

fn err(e: n2vx::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rat(obj: &Bound<'_, PyAny>) -> PyResult<ExactRational> {
    parse_rational(&obj.str()?.to_string()).map_err(err)
}

fn half(obj: &Bound<'_, PyAny>) -> PyResult<HalfInt> {
    let x = rat(obj)?;
    HalfInt::from_rational(&x).ok_or_else(|| PyValueError::new_err(format!("{} is not a half-integer", fmt_rational(&x))))
}

fn fraction<'py>(py: Python<'py>, x: &ExactRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((fmt_rational(x),))
}

fn from_json<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

#[pyfunction]
fn central_charge<'py>(py: Python<'py>, m: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &classification::central_charge(&rat(m)?).map_err(err)?)
}

/// One point of `W^{c_m}` in both parametrizations.
#[pyclass(name = "WEntry", frozen, get_all)]
struct PyWEntry {
    r: i64,
    i: i64,
    j: Py<PyAny>,
    k: Py<PyAny>,
    h: Py<PyAny>,
    q: Py<PyAny>,
}

impl PyWEntry {
    fn wrap(py: Python<'_>, e: &classification::WEntry) -> PyResult<Self> {
        Ok(PyWEntry {
            r: e.r,
            i: e.i,
            j: fraction(py, &e.j)?.unbind(),
            k: fraction(py, &e.k)?.unbind(),
            h: fraction(py, &e.h)?.unbind(),
            q: fraction(py, &e.q)?.unbind(),
        })
    }
}

#[pymethods]
impl PyWEntry {
    fn __repr__(&self) -> String {
        format!("WEntry(r={}, i={}, j={}, k={}, h={}, q={})", self.r, self.i, self.j, self.k, self.h, self.q)
    }
}

#[pyfunction]
fn enumerate_w(py: Python<'_>, m: &Bound<'_, PyAny>) -> PyResult<Vec<PyWEntry>> {
    classification::enumerate_w(&rat(m)?).map_err(err)?.iter().map(|e| PyWEntry::wrap(py, e)).collect()
}

#[pyfunction]
fn enumerate_s<'py>(py: Python<'py>, m: &Bound<'py, PyAny>) -> PyResult<Vec<Bound<'py, PyAny>>> {
    n2vx::affine::enumerate_s(&rat(m)?).map_err(err)?.iter().map(|x| fraction(py, x)).collect()
}

#[pyfunction]
fn is_admissible(m: &Bound<'_, PyAny>) -> PyResult<bool> {
    Ok(n2vx::affine::is_admissible(&rat(m)?))
}

#[pyfunction]
fn membership_d<'py>(
    py: Python<'py>,
    h: &Bound<'py, PyAny>,
    q: &Bound<'py, PyAny>,
    m: &Bound<'py, PyAny>,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    classification::membership_d(&rat(h)?, &rat(q)?, &rat(m)?).map_err(err)?.iter().map(|x| fraction(py, x)).collect()
}

#[pyclass(name = "Verdict", frozen)]
struct PyVerdict {
    inner: ClassificationVerdict,
}

#[pymethods]
impl PyVerdict {
    #[getter]
    fn tag(&self) -> &'static str {
        self.inner.tag()
    }

    #[getter]
    fn witness<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        from_json(py, &self.inner.witness_json())
    }

    fn is_module(&self) -> bool {
        self.inner.is_module()
    }

    fn __repr__(&self) -> String {
        format!("Verdict({}, {})", self.inner.tag(), self.inner.witness_json())
    }
}

#[pyfunction]
fn classify(h: &Bound<'_, PyAny>, q: &Bound<'_, PyAny>, m: &Bound<'_, PyAny>) -> PyResult<PyVerdict> {
    Ok(PyVerdict { inner: classification::classify(&rat(h)?, &rat(q)?, &rat(m)?) })
}

/// The Verma module `M_{h,q,c}` with lazily computed weight spaces.
#[pyclass(name = "VermaModule", unsendable)]
struct PyVerma {
    inner: verma::VermaModule,
}

#[pymethods]
impl PyVerma {
    #[new]
    fn new(h: &Bound<'_, PyAny>, q: &Bound<'_, PyAny>, c: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyVerma { inner: verma::VermaModule::new(HighestWeightN2::new(rat(h)?, rat(q)?, rat(c)?)) })
    }

    fn basis(&self, level: &Bound<'_, PyAny>, charge: i64) -> PyResult<Vec<String>> {
        Ok(self.inner.weight_space_basis(half(level)?, charge).iter().map(|b| b.to_string()).collect())
    }

    fn gram_matrix<'py>(&self, py: Python<'py>, level: &Bound<'py, PyAny>, charge: i64) -> PyResult<Bound<'py, PyList>> {
        let g = self.inner.gram_matrix(half(level)?, charge).to_dense();
        let rows = g
            .iter()
            .map(|r| PyList::new(py, r.iter().map(|x| fraction(py, x)).collect::<PyResult<Vec<_>>>()?))
            .collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, rows)
    }

    fn singular_vectors(&self, level: &Bound<'_, PyAny>, charge: i64) -> PyResult<Vec<String>> {
        Ok(self.inner.singular_vectors(half(level)?, charge).iter().map(|v| self.inner.display(v)).collect())
    }
}

#[pyfunction]
fn ks_highest_weight<'py>(
    py: Python<'py>,
    gamma: &Bound<'py, PyAny>,
    beta: &Bound<'py, PyAny>,
    m: &Bound<'py, PyAny>,
) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let (h, q) = coset::ks_highest_weight(&rat(gamma)?, &rat(beta)?, &rat(m)?).map_err(err)?;
    Ok((fraction(py, &h)?, fraction(py, &q)?))
}

#[pyfunction]
fn casimir_scalar<'py>(
    py: Python<'py>,
    h: &Bound<'py, PyAny>,
    q: &Bound<'py, PyAny>,
    m: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &coset::casimir_scalar(&rat(h)?, &rat(q)?, &rat(m)?))
}

/// `Ω` from the anti-Kazama-Suzuki zero modes on `v_{h,q,c_m} ⊗ 1`, or `None`
/// if the result is not a multiple of that vector.
#[pyfunction]
#[pyo3(signature = (h, q, m, y_sign = -1))]
fn casimir_eigenvalue<'py>(
    py: Python<'py>,
    h: &Bound<'py, PyAny>,
    q: &Bound<'py, PyAny>,
    m: &Bound<'py, PyAny>,
    y_sign: i64,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let r = coset::casimir_identity_check(&rat(h)?, &rat(q)?, &rat(m)?, y_sign).map_err(err)?;
    r.computed.map(|x| fraction(py, &x)).transpose()
}

/// Run a verification suite; returns `(passed, record)`.
#[pyfunction]
#[pyo3(signature = (suite, m = None, depth = None))]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    m: Option<&Bound<'py, PyAny>>,
    depth: Option<&Bound<'py, PyAny>>,
) -> PyResult<(bool, Bound<'py, PyAny>)> {
    let suite = match suite {
        "ks" => Suite::Ks,
        "anti-ks" => Suite::AntiKs,
        "fminus" => Suite::Fminus,
        "jacobi" => Suite::Jacobi,
        "casimir-identity" => Suite::CasimirIdentity,
        other => return Err(PyValueError::new_err(format!("unknown suite {other:?}"))),
    };
    let cmd = Command::Verify { suite, m: m.map(rat).transpose()?, depth: depth.map(half).transpose()? };
    let out = cli::execute(&cmd).map_err(err)?;
    Ok((out.passed, from_json(py, &out.record)?))
}

#[pymodule]
#[pyo3(name = "n2vx")]
fn n2vx_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWEntry>()?;
    m.add_class::<PyVerdict>()?;
    m.add_class::<PyVerma>()?;
    m.add_function(wrap_pyfunction!(central_charge, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_w, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_s, m)?)?;
    m.add_function(wrap_pyfunction!(is_admissible, m)?)?;
    m.add_function(wrap_pyfunction!(membership_d, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(ks_highest_weight, m)?)?;
    m.add_function(wrap_pyfunction!(casimir_scalar, m)?)?;
    m.add_function(wrap_pyfunction!(casimir_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
