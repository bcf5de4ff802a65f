//! Python bindings. Polynomials cross the boundary as little-endian lists of
//! integer-encoded `F_q` elements; composite results as JSON strings.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use carlitz_core::algebra::FieldSpec;
use carlitz_core::goss::{self, CharacterIndex};
use carlitz_core::invariants::{inequality_report, m_invariant};
use carlitz_core::local::{digits_for_precision, PadicElem, Valuation, ZpApprox};
use carlitz_core::sinnott::kernel_witness;
use carlitz_core::stickelberger::{n_invariant, theta_sharp_at_one, GroupRing, GroupRingElem};
use carlitz_core::verify::{run_suite, to_json, Matrix, Suite};
use carlitz_core::{Context, Error};

create_exception!(carlitz, CarlitzError, PyValueError);
create_exception!(carlitz, GuardError, CarlitzError);
create_exception!(carlitz, UnresolvedError, CarlitzError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Unresolved(_) => UnresolvedError::new_err(e.to_string()),
        e if e.is_guard_failure() => GuardError::new_err(e.to_string()),
        e => CarlitzError::new_err(e.to_string()),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for Result<T, Error> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// `("finite", v)`, `("at_least", v)` or `("infinite", None)`.
fn valuation(v: Valuation) -> (&'static str, Option<i64>) {
    match v {
        Valuation::Finite(v) => ("finite", Some(v)),
        Valuation::AtLeast(v) => ("at_least", Some(v)),
        Valuation::Infinite => ("infinite", None),
    }
}

fn terms(ring: &GroupRing, a: &GroupRingElem) -> Vec<(Vec<u32>, u32)> {
    ring.terms_with_reps(a).into_iter().map(|(g, c)| (g.rep.to_ints(), c.0)).collect()
}

fn reps(xs: &[PadicElem]) -> Vec<Vec<u32>> {
    xs.iter().map(|x| x.rep().to_ints()).collect()
}

/// `F_q` with `q = p^e` together with a monic irreducible `π ∈ F_q[θ]`.
#[pyclass(name = "Context", frozen, module = "carlitz")]
struct PyContext {
    inner: Context,
}

impl PyContext {
    fn character(&self, i: i64) -> PyResult<CharacterIndex> {
        if i < 0 {
            Ok(CharacterIndex::reduce(&self.inner, i))
        } else {
            CharacterIndex::new(&self.inner, i as u64).py()
        }
    }

    fn exponent(&self, y: i64, prec: u32, digits: Option<u32>) -> PyResult<ZpApprox> {
        let p = self.inner.p();
        ZpApprox::from_int(p, y, digits.unwrap_or_else(|| digits_for_precision(p, u64::from(prec)))).py()
    }
}

#[pymethods]
impl PyContext {
    #[new]
    #[pyo3(signature = (p, prime, e = 1, modulus = None))]
    fn new(p: u32, prime: Vec<u64>, e: u32, modulus: Option<Vec<u32>>) -> PyResult<Self> {
        let spec = FieldSpec::new(p, e, modulus.unwrap_or_default());
        Ok(PyContext { inner: Context::new(&spec, &prime).py()? })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    /// Degree of π.
    #[getter]
    fn d(&self) -> u32 {
        self.inner.d()
    }

    #[getter]
    fn prime(&self) -> Vec<u32> {
        self.inner.pi().to_ints()
    }

    fn __repr__(&self) -> String {
        format!("Context(q={}, pi={})", self.inner.q(), self.inner.pi())
    }

    fn power_sum(&self, n: usize, j: u64) -> Vec<u32> {
        goss::power_sum(&self.inner, n, j).to_ints()
    }

    fn bernoulli(&self, j: u64) -> Vec<u32> {
        goss::bernoulli_goss(&self.inner, j).to_ints()
    }

    /// `ζ_A(-j)`.
    fn zeta_neg(&self, j: u64) -> Vec<u32> {
        goss::zeta_neg(&self.inner, j).to_ints()
    }

    fn poly_valuation(&self, a: Vec<u64>) -> PyResult<(&'static str, Option<i64>)> {
        let a = self.inner.poly(&a).py()?;
        Ok(valuation(self.inner.padic().poly_valuation(&a)))
    }

    /// Coefficients of `L_π(X, y, ω^i) mod π^prec`.
    #[pyo3(signature = (i, y, prec, digits = None, method = "exact", max_deg = 6))]
    #[allow(clippy::too_many_arguments)]
    fn lfunction(
        &self,
        py: Python<'_>,
        i: i64,
        y: i64,
        prec: u32,
        digits: Option<u32>,
        method: &str,
        max_deg: usize,
    ) -> PyResult<Vec<Vec<u32>>> {
        let ci = self.character(i)?;
        let y = self.exponent(y, prec, digits)?;
        let ctx = &self.inner;
        let series = py.detach(|| match method {
            "exact" => goss::lfunction_exact(ctx, ci, &y, prec).map(Some),
            "direct" => goss::lfunction_direct(ctx, ci, &y, prec, max_deg).map(Some),
            _ => Ok(None),
        });
        match series.py()? {
            Some(s) => Ok(reps(s.coeffs())),
            None => Err(CarlitzError::new_err(format!("unknown method {method:?}"))),
        }
    }

    /// Valuations of `L(1)` and `L'(1)`.
    #[pyo3(signature = (i, y, prec, digits = None))]
    #[allow(clippy::type_complexity)]
    fn lfunction_at_one(
        &self,
        i: i64,
        y: i64,
        prec: u32,
        digits: Option<u32>,
    ) -> PyResult<((&'static str, Option<i64>), (&'static str, Option<i64>))> {
        let ci = self.character(i)?;
        let y = self.exponent(y, prec, digits)?;
        let (v, d) = goss::lfunction_special(&self.inner, ci, &y, prec).py()?;
        let padic = self.inner.padic();
        Ok((valuation(padic.valuation(&v)), valuation(padic.valuation(&d))))
    }

    /// `Θ_n^#(1, ω^i) mod p` as `[(gamma_rep, coeff)]`.
    #[pyo3(signature = (n, i, max_deg = None))]
    fn theta_sharp_at_one(&self, n: u32, i: i64, max_deg: Option<usize>) -> PyResult<Vec<(Vec<u32>, u32)>> {
        let ci = self.character(i)?;
        let v = theta_sharp_at_one(&self.inner, n, ci, max_deg).py()?;
        Ok(terms(&GroupRing::new(&self.inner, n).py()?, &v))
    }

    #[pyo3(signature = (i, n_max = 3))]
    fn n_invariant(&self, i: i64, n_max: u32) -> PyResult<Option<u32>> {
        let ci = self.character(i)?;
        Ok(n_invariant(&self.inner, ci, n_max).py()?.level())
    }

    /// `None` when unresolved at `m_cap`.
    #[pyo3(signature = (i, m_cap = 64, m_init = None))]
    fn m_invariant(&self, py: Python<'_>, i: i64, m_cap: u32, m_init: Option<u32>) -> PyResult<Option<u32>> {
        let ci = self.character(i)?;
        let ctx = &self.inner;
        Ok(py.detach(|| m_invariant(ctx, ci, m_init, m_cap)).py()?.value())
    }

    /// The `N(i) ≤ m(-i)` report, as JSON.
    #[pyo3(signature = (i, n_max = 3, m_cap = 64))]
    fn inequality_json(&self, i: i64, n_max: u32, m_cap: u32) -> PyResult<String> {
        let ci = self.character(i)?;
        let r = inequality_report(&self.inner, ci, n_max, m_cap).py()?;
        Ok(serde_json::to_string(&r).expect("reports serialize"))
    }

    fn kernel_witness(&self, n: u32) -> PyResult<Vec<(Vec<u32>, u32)>> {
        let w = kernel_witness(&self.inner, n).py()?;
        Ok(terms(&GroupRing::new(&self.inner, n).py()?, &w))
    }

    /// Runs a verification suite on this configuration alone; JSON report.
    #[pyo3(signature = (suite = "all"))]
    fn verify(&self, py: Python<'_>, suite: &str) -> PyResult<String> {
        let suite: Suite = suite.parse().py()?;
        let matrix = Matrix::single(self.inner.clone());
        Ok(py.detach(|| to_json(&run_suite(suite, &matrix))))
    }
}

#[pymodule]
fn carlitz(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyContext>()?;
    m.add("CarlitzError", py.get_type::<CarlitzError>())?;
    m.add("GuardError", py.get_type::<GuardError>())?;
    m.add("UnresolvedError", py.get_type::<UnresolvedError>())?;
    Ok(())
}
