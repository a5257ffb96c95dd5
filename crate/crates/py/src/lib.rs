//! Python module `kostant`.
//!
//! Weights cross the boundary as lists of ε-coordinates; large integers map
//! to Python `int` without loss.

use std::time::Duration;

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use kostant_core::altset as core_altset;
use kostant_core::multiplicity as core_mult;
use kostant_core::verify::{Budget, Suite};
use kostant_core::{partition, Backend, EpsVector, Error};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::ResourceLimit { .. } | Error::RankCeiling { .. } | Error::Audit(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn backend(name: &str) -> PyResult<Backend> {
    name.parse().map_err(py_err)
}

/// Root-system data for `sl(rank+1)`.
#[pyclass(frozen, eq, skip_from_py_object, module = "kostant")]
#[derive(Clone, PartialEq)]
struct RankContext(kostant_core::RankContext);

impl RankContext {
    fn weight(&self, coords: Vec<i64>) -> PyResult<EpsVector> {
        let v = EpsVector::new(coords);
        self.0.check_len(&v).map_err(py_err)?;
        Ok(v)
    }
}

#[pymethods]
impl RankContext {
    #[new]
    fn new(rank: usize) -> PyResult<Self> {
        kostant_core::RankContext::new(rank).map(Self).map_err(py_err)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn rho(&self) -> Vec<i64> {
        self.0.rho().coords().to_vec()
    }

    #[getter]
    fn highest_root(&self) -> Vec<i64> {
        self.0.highest_root().coords().to_vec()
    }

    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.0
            .positive_roots()
            .iter()
            .map(|v| v.coords().to_vec())
            .collect()
    }

    fn simple_roots(&self) -> Vec<Vec<i64>> {
        self.0
            .simple_roots()
            .iter()
            .map(|v| v.coords().to_vec())
            .collect()
    }

    /// ε-coordinates of `Σ a_i ϖ_i`.
    fn weight_from_fundamental(&self, coeffs: Vec<i64>) -> PyResult<Vec<i64>> {
        self.0
            .from_fundamental_coeffs(&coeffs)
            .map(EpsVector::into_coords)
            .map_err(py_err)
    }

    fn fundamental_coeffs(&self, xi: Vec<i64>) -> PyResult<Vec<i64>> {
        let v = self.weight(xi)?;
        self.0.fundamental_coeffs(&v).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("RankContext({})", self.0.rank())
    }
}

/// A permutation in one-line notation, 1-indexed.
#[pyclass(frozen, eq, hash, skip_from_py_object, module = "kostant")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Permutation(kostant_core::Permutation);

#[pymethods]
impl Permutation {
    #[new]
    fn new(images: Vec<usize>) -> PyResult<Self> {
        kostant_core::Permutation::new(images).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Self(kostant_core::Permutation::identity(n))
    }

    #[getter]
    fn images(&self) -> Vec<usize> {
        self.0.images()
    }

    fn length(&self) -> usize {
        self.0.length()
    }

    fn sign(&self) -> i32 {
        self.0.sign()
    }

    fn act(&self, xi: Vec<i64>) -> PyResult<Vec<i64>> {
        self.0
            .act(&EpsVector::new(xi))
            .map(EpsVector::into_coords)
            .map_err(py_err)
    }

    /// `self ∘ other`.
    fn compose(&self, other: &Permutation) -> PyResult<Self> {
        if self.0.degree() != other.0.degree() {
            return Err(PyValueError::new_err("permutations of different degree"));
        }
        Ok(Self(self.0.compose(&other.0)))
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn __repr__(&self) -> String {
        format!("Permutation({:?})", self.0.images())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// A polynomial in `q` with integer coefficients.
#[pyclass(frozen, eq, skip_from_py_object, module = "kostant")]
#[derive(Clone, PartialEq)]
struct QPoly(kostant_core::QPoly);

#[pymethods]
impl QPoly {
    #[new]
    fn new(coeffs: Vec<BigInt>) -> Self {
        Self(kostant_core::QPoly::from_coeffs(coeffs))
    }

    #[getter]
    fn coeffs(&self) -> Vec<BigInt> {
        self.0.coeffs().to_vec()
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn __call__(&self, q: BigInt) -> BigInt {
        self.0.eval(&q)
    }

    fn __add__(&self, other: &QPoly) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &QPoly) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &QPoly) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("QPoly('{}')", self.0)
    }
}

/// `℘(ξ)`.
#[pyfunction]
fn kostant(py: Python<'_>, ctx: &RankContext, xi: Vec<i64>) -> PyResult<BigInt> {
    let xi = ctx.weight(xi)?;
    let c = &ctx.0;
    py.detach(|| partition::kostant(c, &xi))
        .map(BigInt::from)
        .map_err(py_err)
}

/// `℘_q(ξ)`.
#[pyfunction]
fn kostant_q(py: Python<'_>, ctx: &RankContext, xi: Vec<i64>) -> PyResult<QPoly> {
    let xi = ctx.weight(xi)?;
    let c = &ctx.0;
    py.detach(|| partition::kostant_q(c, &xi))
        .map(QPoly)
        .map_err(py_err)
}

/// Whether `℘(ξ) > 0`, by partial sums.
#[pyfunction]
fn is_positive(ctx: &RankContext, xi: Vec<i64>) -> PyResult<bool> {
    let xi = ctx.weight(xi)?;
    partition::is_positive(&ctx.0, &xi).map_err(py_err)
}

/// `(permutation, length, sign, translate)`.
type AltSetEntry = (Permutation, usize, i32, Vec<i64>);

/// The alternation set in lexicographic order.
#[pyfunction]
#[pyo3(signature = (ctx, lam, mu, method = "brute"))]
fn altset(
    py: Python<'_>,
    ctx: &RankContext,
    lam: Vec<i64>,
    mu: Vec<i64>,
    method: &str,
) -> PyResult<Vec<AltSetEntry>> {
    let lam = ctx.weight(lam)?;
    let mu = ctx.weight(mu)?;
    let c = &ctx.0;
    let set = match method {
        "brute" => py
            .detach(|| core_altset::altset_bruteforce(c, &lam, &mu))
            .map_err(py_err)?,
        "closed" => {
            if &lam != c.highest_root() {
                return Err(PyValueError::new_err("the closed form needs lam = highest root"));
            }
            if mu.is_zero() {
                core_altset::altset_closed_zero(c)
            } else {
                core_altset::altset_closed_nonzero(c, &mu).map_err(py_err)?
            }
        }
        other => return Err(PyValueError::new_err(format!("unknown method `{other}`"))),
    };
    Ok(set
        .elements
        .into_iter()
        .map(|e| {
            (
                Permutation(e.permutation),
                e.length,
                e.sign,
                e.translate.into_coords(),
            )
        })
        .collect())
}

/// `(m(λ, μ), terms_evaluated)`.
#[pyfunction]
#[pyo3(signature = (ctx, lam, mu, backend = "pruned"))]
fn mult(
    py: Python<'_>,
    ctx: &RankContext,
    lam: Vec<i64>,
    mu: Vec<i64>,
    backend: &str,
) -> PyResult<(BigInt, u64)> {
    let (lam, mu, b) = (ctx.weight(lam)?, ctx.weight(mu)?, self::backend(backend)?);
    let c = &ctx.0;
    let r = py.detach(|| core_mult::mult(c, &lam, &mu, b)).map_err(py_err)?;
    Ok((r.value, r.terms_evaluated))
}

/// `(m_q(λ, μ), terms_evaluated)`.
#[pyfunction]
#[pyo3(signature = (ctx, lam, mu, backend = "pruned"))]
fn mult_q(
    py: Python<'_>,
    ctx: &RankContext,
    lam: Vec<i64>,
    mu: Vec<i64>,
    backend: &str,
) -> PyResult<(QPoly, u64)> {
    let (lam, mu, b) = (ctx.weight(lam)?, ctx.weight(mu)?, self::backend(backend)?);
    let c = &ctx.0;
    let r = py.detach(|| core_mult::mult_q(c, &lam, &mu, b)).map_err(py_err)?;
    Ok((QPoly(r.value), r.terms_evaluated))
}

/// `m(α̃, μ)` from the closed form.
#[pyfunction]
fn adjoint_multiplicity(ctx: &RankContext, mu: Vec<i64>) -> PyResult<u64> {
    let mu = ctx.weight(mu)?;
    core_mult::adjoint_multiplicity(&ctx.0, &mu).map_err(py_err)
}

/// `(dominant weight, w)` with `w(μ)` dominant.
#[pyfunction]
fn dominant_conjugate(ctx: &RankContext, mu: Vec<i64>) -> PyResult<(Vec<i64>, Permutation)> {
    let mu = ctx.weight(mu)?;
    let (d, w) = core_mult::dominant_conjugate(&ctx.0, &mu).map_err(py_err)?;
    Ok((d.into_coords(), Permutation(w)))
}

/// Runs a verification suite and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (suite, min_rank = 1, max_rank = None, budget_secs = None))]
fn run_suite<'py>(
    py: Python<'py>,
    suite: &str,
    min_rank: usize,
    max_rank: Option<usize>,
    budget_secs: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let suite: Suite = suite.parse().map_err(py_err)?;
    let hi = max_rank.unwrap_or(suite.max_rank());
    let budget = Budget {
        max_wall: budget_secs.map(Duration::from_secs_f64),
    };
    let report = py
        .detach(|| kostant_core::verify::run_suite(suite, min_rank..=hi, budget))
        .map_err(py_err)?;

    let out = PyDict::new(py);
    out.set_item("suite", suite.name())?;
    out.set_item("passed", report.passed())?;
    out.set_item("complete", report.complete)?;
    out.set_item("rank_range", report.rank_range)?;
    let observed: Vec<(usize, Vec<u64>)> = report
        .ranks
        .iter()
        .map(|r| (r.rank, r.observed.clone()))
        .collect();
    out.set_item("observed", observed)?;
    let counterexamples: Vec<(usize, String, String, String)> = report
        .counterexamples
        .into_iter()
        .map(|c| (c.rank, c.witness, c.expected, c.actual))
        .collect();
    out.set_item("counterexamples", counterexamples)?;
    Ok(out)
}

#[pymodule(name = "kostant")]
fn kostant_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<RankContext>()?;
    m.add_class::<Permutation>()?;
    m.add_class::<QPoly>()?;
    m.add_function(wrap_pyfunction!(kostant, m)?)?;
    m.add_function(wrap_pyfunction!(kostant_q, m)?)?;
    m.add_function(wrap_pyfunction!(is_positive, m)?)?;
    m.add_function(wrap_pyfunction!(altset, m)?)?;
    m.add_function(wrap_pyfunction!(mult, m)?)?;
    m.add_function(wrap_pyfunction!(mult_q, m)?)?;
    m.add_function(wrap_pyfunction!(adjoint_multiplicity, m)?)?;
    m.add_function(wrap_pyfunction!(dominant_conjugate, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
