//! Verification suites over a matrix of configurations.
//!
//! Every suite expands into a list of independent cases that run in
//! parallel; results are collected in case order, so the JSON summary does
//! not depend on the thread count.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{FieldElem, FieldSpec, Poly};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::goss::{
    bernoulli_range, block_sum_infty, infinity_interpolation_check, lfunction_direct, lfunction_exact,
    log_floor, power_sum, zeta_infty, zeta_infty_digits, zeta_neg, zeta_poly, zeta_polys, CharacterIndex,
};
use crate::invariants::{
    bernoulli_valuation_scan, estmi_check, inequality_report, m_invariant, verify_certificate,
};
use crate::local::{digits_for_precision, LaurentElem, ZpApprox};
use crate::sinnott::{kernel_witness, level_digits, sinnott_map, stick_lfun_all};
use crate::stickelberger::{
    default_cutoff, euler_inverse_check, n_invariant, theta_series, theta_sharp_at_one, GroupRing,
    GroupRingElem, NInvariant,
};

/// Cap on the precision used by `m`-invariant deepening inside the suites.
pub const M_CAP: u32 = 64;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Simon,
    Beta,
    Zeros,
    Interp,
    Even,
    Stick,
    Sinnott,
    Kernel,
    Invariants,
    Fw,
    Infinity,
    All,
}

impl Suite {
    /// Every concrete suite, in the order `all` runs them.
    pub const EACH: [Suite; 11] = [
        Suite::Simon,
        Suite::Beta,
        Suite::Zeros,
        Suite::Interp,
        Suite::Even,
        Suite::Stick,
        Suite::Sinnott,
        Suite::Kernel,
        Suite::Invariants,
        Suite::Fw,
        Suite::Infinity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Simon => "simon",
            Suite::Beta => "beta",
            Suite::Zeros => "zeros",
            Suite::Interp => "interp",
            Suite::Even => "even",
            Suite::Stick => "stick",
            Suite::Sinnott => "sinnott",
            Suite::Kernel => "kernel",
            Suite::Invariants => "invariants",
            Suite::Fw => "fw",
            Suite::Infinity => "infinity",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite {s:?}")))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FailureKind {
    /// Both sides computed, and they differ.
    Mismatch,
    /// A degree-window or division guard fired.
    Guard,
    /// Any other error.
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub case: String,
    pub inputs: Value,
    pub kind: FailureKind,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<SuiteReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn has_guard_failure(&self) -> bool {
        self.failures.iter().any(|f| f.kind == FailureKind::Guard)
    }
}

/// Configurations a suite runs over. `configs` carry a prime and are used by
/// everything that depends on `𝔭`; `fields` are used by the suites that only
/// depend on `F_q` (and, for the kernel suite, on `π = θ`).
#[derive(Clone, Debug)]
pub struct Matrix {
    pub configs: Vec<Context>,
    pub fields: Vec<Context>,
}

impl Matrix {
    /// `(q=3, π=θ)` and `(q=3, π=θ²+1)`; field suites over `q ∈ {3, 5}` with `π = θ`.
    pub fn desk() -> Result<Self> {
        let c1 = Context::new(&FieldSpec::prime(3), &[0, 1])?;
        let c2 = Context::new(&FieldSpec::prime(3), &[1, 0, 1])?;
        let f5 = Context::new(&FieldSpec::prime(5), &[0, 1])?;
        Ok(Matrix { configs: vec![c1.clone(), c2], fields: vec![c1, f5] })
    }

    pub fn single(ctx: Context) -> Self {
        Matrix { configs: vec![ctx.clone()], fields: vec![ctx] }
    }
}

type Check = Box<dyn Fn() -> Result<Option<String>> + Send + Sync>;

struct Case {
    name: String,
    inputs: Value,
    run: Check,
}

fn case<F>(name: &str, inputs: Value, f: F) -> Case
where
    F: Fn() -> Result<Option<String>> + Send + Sync + 'static,
{
    Case { name: name.to_string(), inputs, run: Box::new(f) }
}

fn expect(ok: bool, detail: impl FnOnce() -> String) -> Option<String> {
    if ok {
        None
    } else {
        Some(detail())
    }
}

fn config_json(ctx: &Context) -> Value {
    let s = ctx.spec();
    json!({ "p": s.p, "e": s.e, "modulus": s.modulus, "pi": ctx.pi().to_ints() })
}

fn with_config(ctx: &Context, extra: Value) -> Value {
    let mut v = config_json(ctx);
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

/// A seed that depends only on the configuration and a suite-local tag.
fn seed(ctx: &Context, tag: u64) -> u64 {
    let s = ctx.spec();
    let mut h = tag ^ 0x9e37_79b9_7f4a_7c15;
    for x in [u64::from(s.p), u64::from(s.e)]
        .into_iter()
        .chain(s.modulus.iter().map(|&c| u64::from(c)))
        .chain(ctx.pi().to_ints().into_iter().map(u64::from))
    {
        h = h.rotate_left(17).wrapping_mul(0x100_0000_01b3) ^ x;
    }
    h
}

fn run_cases(suite: Suite, cases: Vec<Case>) -> SuiteReport {
    let results: Vec<Option<Failure>> = cases
        .par_iter()
        .map(|c| {
            let (kind, detail) = match (c.run)() {
                Ok(None) => return None,
                Ok(Some(d)) => (FailureKind::Mismatch, d),
                Err(e) if e.is_guard_failure() => (FailureKind::Guard, e.to_string()),
                Err(e) => (FailureKind::Error, e.to_string()),
            };
            Some(Failure { case: c.name.clone(), inputs: c.inputs.clone(), kind, detail })
        })
        .collect();
    SuiteReport {
        suite: suite.name().to_string(),
        cases: cases.len(),
        failures: results.into_iter().flatten().collect(),
        suites: Vec::new(),
    }
}

/// Runs one suite (or all of them) over `matrix`.
pub fn run_suite(suite: Suite, matrix: &Matrix) -> SuiteReport {
    if suite == Suite::All {
        let suites: Vec<SuiteReport> = Suite::EACH.iter().map(|&s| run_suite(s, matrix)).collect();
        return SuiteReport {
            suite: "all".into(),
            cases: suites.iter().map(|s| s.cases).sum(),
            failures: suites.iter().flat_map(|s| s.failures.iter().cloned()).collect(),
            suites,
        };
    }
    let cases = match suite {
        Suite::Simon => simon_cases(matrix),
        Suite::Beta => beta_cases(matrix),
        Suite::Zeros => zeros_cases(matrix),
        Suite::Interp => interp_cases(matrix),
        Suite::Even => even_cases(matrix),
        Suite::Stick => stick_cases(matrix),
        Suite::Sinnott => sinnott_cases(matrix),
        Suite::Kernel => kernel_cases(matrix),
        Suite::Invariants => invariant_cases(matrix),
        Suite::Fw => fw_cases(matrix),
        Suite::Infinity => infinity_cases(matrix),
        Suite::All => unreachable!(),
    };
    run_cases(suite, cases)
}

fn simon_cases(m: &Matrix) -> Vec<Case> {
    let mut out = Vec::new();
    for ctx in &m.fields {
        for n in 1..=3usize {
            let qn = ctx.q().pow(n as u32);
            for j in 1..qn - 1 {
                let c = ctx.clone();
                out.push(case("S_n(j) = 0", with_config(ctx, json!({ "n": n, "j": j })), move || {
                    let s = power_sum(&c, n, j);
                    Ok(expect(s.is_zero(), || format!("S_{n}({j}) = {}", c.ring().display(&s))))
                }));
            }
        }
    }
    out
}

fn beta_cases(m: &Matrix) -> Vec<Case> {
    const JMAX: u64 = 300;
    let mut out = Vec::new();
    for ctx in &m.fields {
        let betas = Arc::new(bernoulli_range(ctx, JMAX));
        // θ^q - θ
        let ring = ctx.ring();
        let modulus = ring.sub(&Poly::monomial(FieldElem::ONE, ctx.q() as usize), &Poly::theta());
        for j in 0..=JMAX {
            let (c, b, md) = (ctx.clone(), betas.clone(), modulus.clone());
            out.push(case("beta(j) = 1 mod θ^q - θ", with_config(ctx, json!({ "j": j })), move || {
                let beta = &b[j as usize];
                let r = c.ring().rem(beta, &md)?;
                let deg_ok = beta.degree().is_some_and(|dg| dg as u64 <= u64::from(log_floor(c.q(), j + 1)) * j);
                Ok(expect(r.is_one() && !beta.is_zero() && deg_ok, || {
                    format!("beta({j}) = {}, remainder {}", c.ring().display(beta), c.ring().display(&r))
                }))
            }));
        }
    }
    out
}

fn zeros_cases(m: &Matrix) -> Vec<Case> {
    const JMAX: u64 = 300;
    let mut out = Vec::new();
    for ctx in &m.fields {
        let zs = Arc::new(zeta_polys(ctx, JMAX));
        let step = ctx.q() - 1;
        for j in (step..=JMAX).step_by(step as usize) {
            let (c, z) = (ctx.clone(), zs.clone());
            out.push(case("Z(1, j) = 0", with_config(ctx, json!({ "j": j })), move || {
                let v = z[j as usize].eval_one(c.ring());
                Ok(expect(v.is_zero(), || format!("Z(1, {j}) = {}", c.ring().display(&v))))
            }));
        }
    }
    out
}

fn interp_cases(m: &Matrix) -> Vec<Case> {
    const M: u32 = 4;
    const D: usize = 6;
    const JMAX: u64 = 50;
    let mut out = Vec::new();
    for ctx in &m.configs {
        let digits = digits_for_precision(ctx.p(), u64::from(M));
        for i in CharacterIndex::all(ctx) {
            for j in (i.value()..=JMAX).step_by(ctx.char_modulus() as usize) {
                let c = ctx.clone();
                let inputs = with_config(ctx, json!({ "i": i.value(), "j": j, "M": M, "D": D }));
                out.push(case("direct L = (1 - π^j X^d) Z(X, j)", inputs, move || {
                    let y = ZpApprox::from_int(c.p(), j as i64, digits)?;
                    let direct = lfunction_direct(&c, i, &y, M, D)?;
                    let padic = c.padic();
                    let z = zeta_poly(&c, j);
                    let pij = padic.pi_pow(j.min(u64::from(M)) as u32);
                    let d = c.d() as usize;
                    let top = z.len() + d;
                    let oracle: Vec<_> = (0..top.max(D + 1))
                        .map(|k| {
                            let hi = z.coeff(k).cloned().unwrap_or_else(Poly::zero);
                            let lo = k.checked_sub(d).and_then(|l| z.coeff(l)).cloned().unwrap_or_else(Poly::zero);
                            padic.elem(&c.ring().sub(&hi, &c.ring().mul(&pij, &lo)), M)
                        })
                        .collect();
                    let bad: Vec<usize> = oracle
                        .iter()
                        .enumerate()
                        .filter(|(k, o)| (*k > D && !o.is_zero()) || (*k <= D && direct.coeff_or_zero(padic, *k) != **o))
                        .map(|(k, _)| k)
                        .collect();
                    Ok(expect(bad.is_empty(), || format!("coefficients differ at X^k for k in {bad:?}")))
                }));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed(ctx, 4));
        let ydigits = 6;
        let bound = u64::from(ctx.p()).pow(ydigits);
        for _ in 0..20 {
            let yv = rng.gen_range(0..bound);
            for i in CharacterIndex::all(ctx) {
                let c = ctx.clone();
                let inputs = with_config(ctx, json!({ "i": i.value(), "y": yv, "ydigits": ydigits, "D": D }));
                out.push(case("L(X, y) = Z(X, i) mod 𝔭", inputs, move || {
                    let y = ZpApprox::new(c.p(), yv, ydigits)?;
                    let padic = c.padic();
                    // the trivial character is represented by q^d - 1, not 0: 0^0 = 1
                    let rep = if i.value() == 0 { c.char_modulus() } else { i.value() };
                    let z = zeta_poly(&c, rep);
                    let exact = lfunction_exact(&c, i, &y, 1)?;
                    let direct = lfunction_direct(&c, i, &y, 1, D)?;
                    let len = exact.len().max(z.len()).max(D + 1);
                    let bad: Vec<usize> = (0..len)
                        .filter(|&k| {
                            let zk = padic.elem(z.coeff(k).unwrap_or(&Poly::zero()), 1);
                            exact.coeff_or_zero(padic, k) != zk || (k <= D && direct.coeff_or_zero(padic, k) != zk)
                        })
                        .collect();
                    Ok(expect(bad.is_empty(), || format!("mod 𝔭 coefficients differ at X^k for k in {bad:?}")))
                }));
            }
        }
    }
    out
}

fn even_cases(m: &Matrix) -> Vec<Case> {
    const M: u32 = 4;
    let mut out = Vec::new();
    for ctx in &m.configs {
        for i in CharacterIndex::all(ctx).filter(|i| i.is_even()) {
            for yv in 0..u64::from(ctx.p()).pow(2) {
                let c = ctx.clone();
                let inputs = with_config(ctx, json!({ "i": i.value(), "y": yv, "ydigits": 2, "M": M }));
                out.push(case("L(1, y, ω^i) = 0 for even i", inputs, move || {
                    let y = ZpApprox::new(c.p(), yv, 2)?;
                    let v = lfunction_exact(&c, i, &y, M)?.eval_one(c.padic());
                    Ok(expect(v.is_zero(), || format!("value at 1 has valuation {}", c.padic().valuation(&v))))
                }));
            }
        }
    }
    out
}

fn stick_cases(m: &Matrix) -> Vec<Case> {
    let mut out = Vec::new();
    for ctx in &m.configs {
        for n in 0..=2u32 {
            let dn = default_cutoff(ctx, n);
            for i in CharacterIndex::all(ctx) {
                let base = json!({ "n": n, "i": i.value(), "D": dn });
                let c = ctx.clone();
                out.push(case("X^0 coefficient is 1", with_config(ctx, base.clone()), move || {
                    let t = theta_series(&c, n, i, dn)?;
                    Ok(expect(t.coeffs[0] == GroupRing::new(&c, n)?.one(), || "X^0 coefficient is not 1".into()))
                }));
                let c = ctx.clone();
                out.push(case("Euler product inverse", with_config(ctx, base.clone()), move || {
                    Ok(expect(euler_inverse_check(&c, n, i, dn)?, || "product with Euler factors is not 1".into()))
                }));
                if i.value() != 0 {
                    let c = ctx.clone();
                    out.push(case("guard window and (1 - X) division", with_config(ctx, base.clone()), move || {
                        theta_sharp_at_one(&c, n, i, None).map(|_| None)
                    }));
                }
                if n <= 1 {
                    let c = ctx.clone();
                    let d1 = default_cutoff(ctx, n + 1);
                    let inputs = with_config(ctx, json!({ "n": n, "i": i.value(), "D": d1 }));
                    out.push(case("tower projection", inputs, move || {
                        let upper = theta_series(&c, n + 1, i, d1)?;
                        let lower = theta_series(&c, n, i, d1)?;
                        let (ru, rl) = (GroupRing::new(&c, n + 1)?, GroupRing::new(&c, n)?);
                        let bad: Vec<usize> = (0..=d1)
                            .filter(|&k| ru.project(&upper.coeffs[k], &rl).map_or(true, |x| x != lower.coeffs[k]))
                            .collect();
                        Ok(expect(bad.is_empty(), || format!("projection differs at X^k for k in {bad:?}")))
                    }));
                    let c = ctx.clone();
                    out.push(case("cutoff stability", with_config(ctx, base.clone()), move || {
                        let a = theta_series(&c, n, i, dn)?;
                        let b = theta_series(&c, n, i, dn + 2)?;
                        Ok(expect(a.coeffs[..] == b.coeffs[..=dn], || "coefficients change when D grows".into()))
                    }));
                }
            }
        }
    }
    out
}

/// Largest level checked by the Sinnott suites: 2 for `d = 1`, 1 for `d = 2`.
pub fn sinnott_max_level(ctx: &Context) -> u32 {
    3u32.saturating_sub(ctx.d())
}

fn random_element(ring: &GroupRing, rng: &mut ChaCha8Rng, qd: u32) -> GroupRingElem {
    let dense: Vec<FieldElem> = (0..ring.group().order()).map(|_| FieldElem(rng.gen_range(0..qd))).collect();
    ring.from_dense(&dense)
}

fn sinnott_cases(m: &Matrix) -> Vec<Case> {
    let mut out = Vec::new();
    for ctx in &m.configs {
        let top = sinnott_max_level(ctx);
        for n in 0..=top {
            let dn = default_cutoff(ctx, n);
            for i in CharacterIndex::all(ctx).skip(1) {
                let c = ctx.clone();
                let inputs = with_config(ctx, json!({ "n": n, "i": i.value(), "D": dn, "ydigits": level_digits(ctx, n) }));
                out.push(case("s_n(Θ_n(X, ω̃^-i))(y) = L(X, -y, ω^i)", inputs, move || {
                    let reports = stick_lfun_all(&c, i, n, dn)?;
                    let bad: Vec<(u64, Vec<usize>)> = reports
                        .iter()
                        .filter(|r| !r.agree())
                        .map(|r| (r.y, r.matches.iter().enumerate().filter(|(_, &b)| !b).map(|(k, _)| k).collect()))
                        .collect();
                    Ok(expect(bad.is_empty(), || format!("(y, [k]) disagreements: {bad:?}")))
                }));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed(ctx, 7));
        let qd = ctx.qd() as u32;
        for n in 0..=top {
            for s in 0..4u32 {
                let ring = match GroupRing::new(ctx, n) {
                    Ok(r) => r,
                    Err(_) => continue,
                };
                let (a, b) = (random_element(&ring, &mut rng, qd), random_element(&ring, &mut rng, qd));
                let c = ctx.clone();
                out.push(case("s_n is a ring homomorphism", with_config(ctx, json!({ "n": n, "sample": s })), move || {
                    let padic = c.padic();
                    let (sa, sb) = (sinnott_map(&c, &a)?, sinnott_map(&c, &b)?);
                    let prod = sinnott_map(&c, &ring.mul(&a, &b)?)?;
                    let sum = sinnott_map(&c, &ring.add(&a, &b)?)?;
                    let ok = (0..sa.values.len()).all(|y| {
                        prod.values[y] == padic.mul(&sa.values[y], &sb.values[y])
                            && sum.values[y] == padic.add(&sa.values[y], &sb.values[y])
                    });
                    Ok(expect(ok, || "s_n(ab) ≠ s_n(a)s_n(b) or s_n(a+b) ≠ s_n(a)+s_n(b)".into()))
                }));
            }
        }
        for n in 0..top {
            for s in 0..4u32 {
                let upper = match GroupRing::new(ctx, n + 1) {
                    Ok(r) => r,
                    Err(_) => continue,
                };
                let a = random_element(&upper, &mut rng, qd);
                let c = ctx.clone();
                out.push(case("s_n respects the tower", with_config(ctx, json!({ "n": n, "sample": s })), move || {
                    let lower = GroupRing::new(&c, n)?;
                    let hi = sinnott_map(&c, &a)?;
                    let lo = sinnott_map(&c, &upper.project(&a, &lower)?)?;
                    let m = lo.values.len();
                    let ok = hi.values.iter().enumerate().all(|(y, v)| {
                        c.padic().truncate(v, n + 1).is_ok_and(|t| t == lo.values[y % m])
                    });
                    Ok(expect(ok, || "reduced s_{n+1} differs from s_n after projection".into()))
                }));
            }
        }
    }
    out
}

fn kernel_cases(m: &Matrix) -> Vec<Case> {
    let mut out = Vec::new();
    for ctx in &m.fields {
        for n in 1..=3u32 {
            let c = ctx.clone();
            out.push(case("kernel witness", with_config(ctx, json!({ "n": n })), move || {
                let w = kernel_witness(&c, n)?;
                if w.is_zero() {
                    return Ok(Some("witness is zero".into()));
                }
                if !sinnott_map(&c, &w)?.is_zero() {
                    return Ok(Some("witness is not annihilated by s_n".into()));
                }
                if c.qd() == 3 && n == 1 {
                    // same line as the norm element
                    let ring = GroupRing::new(&c, 1)?;
                    let norm = ring.norm_element();
                    let on_line = c.residue().field().elements().any(|x| ring.scale(&norm, x) == w);
                    return Ok(expect(on_line, || "witness is not a multiple of the norm element".into()));
                }
                Ok(None)
            }));
        }
    }
    out
}

fn invariant_cases(m: &Matrix) -> Vec<Case> {
    let mut out = Vec::new();
    for ctx in &m.configs {
        for i in CharacterIndex::all(ctx) {
            let inputs = with_config(ctx, json!({ "i": i.value(), "m_cap": M_CAP }));
            if i.value() != 0 {
                let c = ctx.clone();
                out.push(case("N(i) ≤ m(-i)", with_config(ctx, json!({ "i": i.value(), "n_max": 3, "m_cap": M_CAP })), move || {
                    let r = inequality_report(&c, i, 3, M_CAP)?;
                    Ok(expect(r.holds, || format!("N = {} > m = {}", r.n_value, r.m_value)))
                }));
            }
            if i.value() != 0 && !i.is_even() {
                let c = ctx.clone();
                out.push(case("m(i) ≤ (i/d) log_q(i+1)", inputs.clone(), move || {
                    let r = estmi_check(&c, i, M_CAP)?;
                    Ok(expect(r.holds, || format!("m = {} exceeds {}", r.m, r.bound)))
                }));
            }
            let c = ctx.clone();
            out.push(case("certificate re-verifies", inputs.clone(), move || {
                let r = m_invariant(&c, i, None, M_CAP)?;
                if r.value().is_none() {
                    return Err(Error::Unresolved(format!("m({}) at cap {M_CAP}", i.value())));
                }
                Ok(expect(verify_certificate(&c, &r)?, || "direct enumeration disagrees with the certificate".into()))
            }));
            let c = ctx.clone();
            out.push(case("m(i) = min v(β(j))", inputs.clone(), move || {
                let r = m_invariant(&c, i, None, M_CAP)?;
                let (Some(v), Some(j)) = (r.value(), r.certificate.witness_j) else {
                    return Err(Error::Unresolved(format!("m({}) at cap {M_CAP}", i.value())));
                };
                let scan = bernoulli_valuation_scan(&c, i, j);
                Ok(expect(scan.map(|s| s.1) == Some(i64::from(v)), || format!("m = {v}, β-scan up to {j} gives {scan:?}")))
            }));
            let c = ctx.clone();
            out.push(case("m(i) independent of the seed", inputs, move || {
                let a = m_invariant(&c, i, None, M_CAP)?.value;
                let b = m_invariant(&c, i, Some(1), M_CAP)?.value;
                Ok(expect(a == b, || format!("{a:?} vs {b:?}")))
            }));
        }
    }
    out
}

fn fw_cases(m: &Matrix) -> Vec<Case> {
    let mut out = Vec::new();
    for ctx in &m.configs {
        for i in CharacterIndex::all(ctx).skip(1) {
            let c = ctx.clone();
            out.push(case("N(i) resolves", with_config(ctx, json!({ "i": i.value(), "n_max": 3 })), move || {
                let r = n_invariant(&c, i, 3)?;
                Ok(expect(matches!(r, NInvariant::Level(_)), || format!("{r:?}")))
            }));
        }
    }
    out
}

fn infinity_cases(m: &Matrix) -> Vec<Case> {
    const TARGET: i64 = 10;
    let mut out = Vec::new();
    for ctx in &m.fields {
        for j in 1..=20u64 {
            let c = ctx.clone();
            out.push(case("ζ(θ^-j, -j) = Z(1, j)", with_config(ctx, json!({ "j": j, "target": TARGET })), move || {
                let x = LaurentElem::theta_pow(-(j as i64));
                let y = ZpApprox::from_int(c.p(), -(j as i64), zeta_infty_digits(&c, j as i64, TARGET))?;
                let z = zeta_infty(&c, &x, &y, TARGET)?;
                let expect_v = LaurentElem::from_poly(&zeta_neg(&c, j)).truncate(z.certified);
                Ok(expect(z.value == expect_v, || format!("mismatch to certified precision {}", z.certified)))
            }));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed(ctx, 11));
        for n in 1..=4u32 {
            let bound = i64::from(ctx.p()).pow(n - 1);
            for s in 0..5 {
                let digits = n + 1;
                let yv = rng.gen_range(0..u64::from(ctx.p()).pow(digits));
                let c = ctx.clone();
                let inputs = with_config(ctx, json!({ "n": n, "y": yv, "ydigits": digits, "sample": s }));
                out.push(case("v(block n) ≥ p^(n-1)", inputs, move || {
                    let y = ZpApprox::new(c.p(), yv, digits)?;
                    let b = block_sum_infty(&c, n as usize, &y, bound)?;
                    Ok(expect(b.valuation().is_at_least(bound), || format!("valuation {}", b.valuation())))
                }));
            }
        }
        let yv = rng.gen_range(0..u64::from(ctx.p()).pow(4));
        let c = ctx.clone();
        out.push(case("boundary |x| = 1 certifies", with_config(ctx, json!({ "y": yv, "ydigits": 4, "target": TARGET })), move || {
            let y = ZpApprox::new(c.p(), yv, 4)?;
            let z = zeta_infty(&c, &LaurentElem::one(), &y, TARGET)?;
            Ok(expect(z.certified >= TARGET, || format!("certified {}", z.certified)))
        }));
    }
    for ctx in &m.configs {
        let mut rng = ChaCha8Rng::seed_from_u64(seed(ctx, 12));
        let digits = 4;
        for s in 0..20 {
            let yv = rng.gen_range(0..u64::from(ctx.p()).pow(digits));
            let c = ctx.clone();
            let inputs = with_config(ctx, json!({ "x": "θ^2", "y": yv, "ydigits": digits, "D": 6, "target": TARGET, "sample": s }));
            out.push(case("Euler product = (1 - π^-s) ζ(x, y)", inputs, move || {
                let y = ZpApprox::new(c.p(), yv, digits)?;
                let r = infinity_interpolation_check(&c, &LaurentElem::theta_pow(2), &y, 6, TARGET)?;
                Ok(expect(r.agree && r.certified >= 8, || format!("agree = {}, certified = {}", r.agree, r.certified)))
            }));
        }
    }
    out
}

/// Canonical JSON for a report.
pub fn to_json(report: &SuiteReport) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.iter().chain([Suite::All].iter()) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let m = Matrix::single(Context::new(&FieldSpec::prime(3), &[0, 1]).unwrap());
        for s in [Suite::Simon, Suite::Kernel, Suite::Fw] {
            let r = run_suite(s, &m);
            assert!(r.passed(), "{}", to_json(&r));
            assert!(r.cases > 0);
        }
    }
}
