//! Python bindings for the linnik toolkit: exact Q(∛3) arithmetic, the
//! inequality verifier, and the least-prime scanner.
//!
//! Rational coordinates cross the boundary as ints or `"n/d"` strings so
//! nothing is lost to floating point; decimal output goes through the same
//! guaranteed-error rendering as the Rust API.

use std::str::FromStr;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use linnik::factor;
use linnik::lemma;
use linnik::primality;
use linnik::rational::BigRational;
use linnik::scanner::{self, ScanConfig, ScanRecord, ScanSummary, MAX_CAP};
use linnik::zeros;

#[derive(FromPyObject)]
enum RationalArg {
    Int(i64),
    Str(String),
}

fn to_rational(arg: RationalArg) -> PyResult<BigRational> {
    match arg {
        RationalArg::Int(n) => Ok(BigRational::from_integer(n.into())),
        RationalArg::Str(s) => BigRational::from_str(s.trim())
            .map_err(|e| PyValueError::new_err(format!("bad rational {s:?}: {e}"))),
    }
}

/// An element x + y·ρ + z·ρ² of Q(ρ), ρ = ∛3, with exact rational
/// coordinates.
#[pyclass(frozen)]
#[derive(Clone)]
struct CubicNumber {
    inner: linnik::CubicNumber,
}

#[pymethods]
impl CubicNumber {
    /// CubicNumber(x, y, z) — each coordinate an int or a "n/d" string.
    #[new]
    #[pyo3(signature = (x = RationalArg::Int(0), y = RationalArg::Int(0), z = RationalArg::Int(0)))]
    fn new(x: RationalArg, y: RationalArg, z: RationalArg) -> PyResult<Self> {
        Ok(Self {
            inner: linnik::CubicNumber::new(to_rational(x)?, to_rational(y)?, to_rational(z)?),
        })
    }

    /// The generator ρ itself.
    #[staticmethod]
    fn rho() -> Self {
        Self {
            inner: linnik::CubicNumber::rho(),
        }
    }

    /// The exact coordinates as fraction strings (x, y, z).
    fn coordinates(&self) -> (String, String, String) {
        (
            self.inner.x().to_string(),
            self.inner.y().to_string(),
            self.inner.z().to_string(),
        )
    }

    /// Exact sign of the value: -1, 0 or +1.
    fn sign(&self) -> i8 {
        self.inner.sign()
    }

    /// Field norm as a fraction string.
    fn norm(&self) -> String {
        self.inner.norm().to_string()
    }

    /// Decimal rendering with guaranteed absolute error below 10^-digits.
    fn to_decimal(&self, digits: u32) -> PyResult<String> {
        if digits == 0 {
            return Err(PyValueError::new_err("digits must be at least 1"));
        }
        Ok(self.inner.to_decimal(digits))
    }

    fn inverse(&self) -> PyResult<Self> {
        self.inner
            .inv()
            .map(|inner| Self { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __add__(&self, other: &Self) -> Self {
        Self {
            inner: &self.inner + &other.inner,
        }
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self {
            inner: &self.inner - &other.inner,
        }
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self {
            inner: &self.inner * &other.inner,
        }
    }

    fn __truediv__(&self, other: &Self) -> PyResult<Self> {
        let inv = other
            .inner
            .inv()
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Self {
            inner: &self.inner * &inv,
        })
    }

    fn __neg__(&self) -> Self {
        Self {
            inner: -&self.inner,
        }
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        let (x, y, z) = self.coordinates();
        format!("CubicNumber({x:?}, {y:?}, {z:?})")
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// Runs the full verification with the reference parameters and returns the
/// report as a dict.
#[pyfunction]
#[pyo3(signature = (digits = 6))]
fn verify_lemma(py: Python<'_>, digits: u32) -> PyResult<Py<PyDict>> {
    if !(1..=100).contains(&digits) {
        return Err(PyValueError::new_err("digits must be in 1..=100"));
    }
    let report = lemma::verify_lemma(&lemma::LemmaParameters::default(), digits);
    let d = PyDict::new(py);
    d.set_item("verdict", report.verdict.to_string())?;
    d.set_item("discriminant_sign", report.discriminant_sign)?;
    d.set_item("monotone_increasing", report.monotone_increasing)?;
    d.set_item("constraint_ok", report.constraint_ok)?;
    d.set_item("s_low", &report.s_low)?;
    d.set_item("s_high", &report.s_high)?;
    d.set_item("s_high_below_threshold", report.s_high_below_threshold)?;
    d.set_item("epsilon_max", &report.epsilon_max)?;
    d.set_item("c1", report.c1.to_decimal(digits))?;
    d.set_item("c2", report.c2.to_decimal(digits))?;
    d.set_item("c3", report.c3.to_decimal(digits))?;
    Ok(d.into())
}

/// The least prime ≡ a (mod q) at or below cap, or None.
#[pyfunction]
#[pyo3(signature = (a, q, cap = None))]
fn least_prime_in_ap(a: u64, q: u64, cap: Option<u64>) -> PyResult<Option<u64>> {
    scanner::least_prime_in_ap(a, q, cap.unwrap_or(MAX_CAP))
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

fn record_dict(py: Python<'_>, rec: &ScanRecord) -> PyResult<Py<PyDict>> {
    let d = PyDict::new(py);
    d.set_item("q", rec.q)?;
    d.set_item("q3", rec.q3)?;
    d.set_item("q2", rec.q2)?;
    d.set_item("worst_a", rec.worst_a)?;
    d.set_item("least_prime", rec.least_prime)?;
    d.set_item("exponent", rec.exponent)?;
    d.set_item("status", rec.status.to_string())?;
    Ok(d.into())
}

fn summary_dict(py: Python<'_>, summary: &ScanSummary) -> PyResult<Py<PyDict>> {
    let d = PyDict::new(py);
    d.set_item("records", summary.records)?;
    d.set_item("max_exponent", summary.max_exponent)?;
    d.set_item("max_exponent_q", summary.max_exponent_q)?;
    d.set_item("violations", summary.violations)?;
    d.set_item("cap_exceeded", summary.cap_exceeded)?;
    Ok(d.into())
}

/// Scans one modulus (q >= 3) and returns its record as a dict.
#[pyfunction]
#[pyo3(signature = (q, exponent = 4.5, constant = 1.0, cap = None))]
fn scan_modulus(
    py: Python<'_>,
    q: u64,
    exponent: f64,
    constant: f64,
    cap: Option<u64>,
) -> PyResult<Py<PyDict>> {
    if q < 3 {
        return Err(PyValueError::new_err("q must be at least 3"));
    }
    let config = ScanConfig {
        q_min: q,
        q_max: q,
        cubic_bound: None,
        exponent_bound: exponent,
        constant_c: constant,
        absolute_cap: cap.unwrap_or(MAX_CAP),
    };
    config
        .validate()
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    record_dict(py, &scanner::scan_modulus(q, &config))
}

/// Scans a modulus range; returns (records, summary).
#[pyfunction]
#[pyo3(signature = (q_min, q_max, cubic_bound = None, exponent = 4.5, constant = 1.0, cap = None))]
fn scan_range(
    py: Python<'_>,
    q_min: u64,
    q_max: u64,
    cubic_bound: Option<u64>,
    exponent: f64,
    constant: f64,
    cap: Option<u64>,
) -> PyResult<(Vec<Py<PyDict>>, Py<PyDict>)> {
    let config = ScanConfig {
        q_min,
        q_max,
        cubic_bound,
        exponent_bound: exponent,
        constant_c: constant,
        absolute_cap: cap.unwrap_or(MAX_CAP),
    };
    let (records, summary) =
        scanner::scan_range(&config).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let rows = records
        .iter()
        .map(|rec| record_dict(py, rec))
        .collect::<PyResult<Vec<_>>>()?;
    Ok((rows, summary_dict(py, &summary)?))
}

/// The decomposition q = q3**3 * q2 with q2 cube-free.
#[pyfunction]
fn cubic_part(q: u64) -> PyResult<(u64, u64)> {
    if q == 0 {
        return Err(PyValueError::new_err("q must be at least 1"));
    }
    Ok(factor::cubic_part(q))
}

/// Deterministic primality verdict, correct for all n < 2**64.
#[pyfunction]
fn is_prime_u64(n: u64) -> bool {
    primality::is_prime_u64(n)
}

/// lambda = (1 - beta) * ln(q), mu = gamma * ln(q); requires q >= 3.
#[pyfunction]
fn to_lambda_mu(beta: f64, gamma: f64, q: u64) -> PyResult<(f64, f64)> {
    zeros::to_lambda_mu(beta, gamma, q).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// beta = 1 - lambda/ln(q), gamma = mu/ln(q); requires q >= 3.
#[pyfunction]
fn from_lambda_mu(lambda: f64, mu: f64, q: u64) -> PyResult<(f64, f64)> {
    zeros::from_lambda_mu(lambda, mu, q).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// The reference N(lambda) table as (lambda, N) pairs, lambda rendered as in
/// the CSV export.
#[pyfunction]
fn zero_density_table() -> Vec<(String, u64)> {
    zeros::ZeroDensityTable::reference()
        .csv_body()
        .lines()
        .map(|line| {
            let (l, n) = line.split_once(',').expect("csv body rows have two fields");
            (l.to_owned(), n.parse().expect("counts are integers"))
        })
        .collect()
}

#[pymodule]
fn linnik_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<CubicNumber>()?;
    m.add_function(wrap_pyfunction!(verify_lemma, m)?)?;
    m.add_function(wrap_pyfunction!(least_prime_in_ap, m)?)?;
    m.add_function(wrap_pyfunction!(scan_modulus, m)?)?;
    m.add_function(wrap_pyfunction!(scan_range, m)?)?;
    m.add_function(wrap_pyfunction!(cubic_part, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime_u64, m)?)?;
    m.add_function(wrap_pyfunction!(to_lambda_mu, m)?)?;
    m.add_function(wrap_pyfunction!(from_lambda_mu, m)?)?;
    m.add_function(wrap_pyfunction!(zero_density_table, m)?)?;
    Ok(())
}
