//! `m_𝔭(i)` with termination certificates, the upper bound
//! `m_𝔭(i) ≤ (i/d) log_q(i+1)`, and the comparison `N_𝔭(i) ≤ m_𝔭(-i)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::goss::{crt_exponent, lfunction_direct, lfunction_exact, log_floor, CharacterIndex};
use crate::local::{digits_for_precision, Valuation, ZpApprox};
use crate::stickelberger::{n_invariant, NInvariant};

/// Seed for even-type characters, where the upper bound does not apply.
pub const EVEN_SEED: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassValuation {
    pub y: u64,
    pub j: u64,
    pub valuation: Valuation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MCertificate {
    pub precision: u32,
    pub digits: u32,
    pub classes: Vec<ClassValuation>,
    pub witness_y: Option<u64>,
    pub witness_j: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum MValue {
    Resolved(u32),
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MInvariantResult {
    pub index: u64,
    pub even: bool,
    pub value: MValue,
    pub certificate: MCertificate,
    /// Every precision tried, in order.
    pub attempts: Vec<u32>,
}

impl MInvariantResult {
    pub fn value(&self) -> Option<u32> {
        match self.value {
            MValue::Resolved(v) => Some(v),
            MValue::Unresolved => None,
        }
    }
}

/// `(i+1)^i` compared with `q^{k d}`: true iff `q^{kd} ≤ (i+1)^i`.
fn power_le(q: u64, kd: u64, i: u64) -> bool {
    let lhs = (q as u128).checked_pow(kd as u32);
    let rhs = ((i + 1) as u128).checked_pow(i as u32);
    match (lhs, rhs) {
        (Some(l), Some(r)) if kd <= u32::MAX as u64 && i <= u32::MAX as u64 => l <= r,
        (None, Some(_)) => false,
        _ => (kd as f64) * (q as f64).ln() <= (i as f64) * ((i + 1) as f64).ln(),
    }
}

/// `⌊(i/d) log_q(i+1)⌋`: the largest `k` with `q^{kd} ≤ (i+1)^i`.
pub fn estmi_floor(ctx: &Context, i: u64) -> u64 {
    let d = u64::from(ctx.d());
    let mut k = 0;
    while power_le(ctx.q(), (k + 1) * d, i) {
        k += 1;
    }
    k
}

/// `m ≤ (i/d) log_q(i+1)`, decided exactly.
pub fn estmi_bound_holds(ctx: &Context, i: u64, m: u64) -> bool {
    power_le(ctx.q(), m * u64::from(ctx.d()), i)
}

pub fn default_seed(ctx: &Context, i: CharacterIndex) -> u32 {
    if i.is_even() {
        EVEN_SEED
    } else {
        estmi_floor(ctx, i.value()) as u32 + 2
    }
}

fn class_valuation(ctx: &Context, i: CharacterIndex, y: &ZpApprox, prec: u32) -> Result<ClassValuation> {
    let l = lfunction_exact(ctx, i, y, prec)?;
    let x = if i.is_even() { l.derivative_at_one(ctx.padic()) } else { l.eval_one(ctx.padic()) };
    Ok(ClassValuation { y: y.value(), j: crt_exponent(ctx, i, y)?, valuation: ctx.padic().valuation(&x) })
}

fn certificate_at(ctx: &Context, i: CharacterIndex, prec: u32) -> Result<MCertificate> {
    let digits = digits_for_precision(ctx.p(), u64::from(prec));
    let ys: Vec<ZpApprox> = ZpApprox::all_classes(ctx.p(), digits)?.collect();
    let classes: Vec<ClassValuation> =
        ys.par_iter().map(|y| class_valuation(ctx, i, y, prec)).collect::<Result<_>>()?;
    let best = classes
        .iter()
        .filter_map(|c| c.valuation.finite().map(|v| (v, c)))
        .min_by_key(|(v, c)| (*v, c.j));
    Ok(MCertificate {
        precision: prec,
        digits,
        witness_y: best.map(|(_, c)| c.y),
        witness_j: best.map(|(_, c)| c.j),
        classes,
    })
}

/// `m_𝔭(i)` by iterative deepening from `m_init` (default: the upper-bound
/// seed, or [`EVEN_SEED`]) up to `m_cap`.
pub fn m_invariant(
    ctx: &Context,
    i: CharacterIndex,
    m_init: Option<u32>,
    m_cap: u32,
) -> Result<MInvariantResult> {
    let mut prec = m_init.unwrap_or_else(|| default_seed(ctx, i)).clamp(1, m_cap.max(1));
    let mut attempts = Vec::new();
    loop {
        attempts.push(prec);
        let cert = certificate_at(ctx, i, prec)?;
        let min = cert.classes.iter().filter_map(|c| c.valuation.finite()).min();
        if let Some(v) = min {
            return Ok(MInvariantResult {
                index: i.value(),
                even: i.is_even(),
                value: MValue::Resolved(v as u32),
                certificate: cert,
                attempts,
            });
        }
        if prec >= m_cap {
            return Ok(MInvariantResult {
                index: i.value(),
                even: i.is_even(),
                value: MValue::Unresolved,
                certificate: cert,
                attempts,
            });
        }
        prec = (prec * 2).min(m_cap);
    }
}

/// Recomputes every class valuation of a certificate through direct
/// enumeration. Coefficients one degree past the exact bound must vanish.
pub fn verify_certificate(ctx: &Context, result: &MInvariantResult) -> Result<bool> {
    let i = CharacterIndex::new(ctx, result.index)?;
    let cert = &result.certificate;
    let padic = ctx.padic();
    let checks: Vec<bool> = cert
        .classes
        .par_iter()
        .map(|c| {
            let y = ZpApprox::new(ctx.p(), c.y, cert.digits)?;
            let top = log_floor(ctx.q(), c.j + 1) as usize + ctx.d() as usize;
            let l = lfunction_direct(ctx, i, &y, cert.precision, top + 1)?;
            if l.len() > top + 1 {
                return Ok(false);
            }
            let x = if i.is_even() { l.derivative_at_one(padic) } else { l.eval_one(padic) };
            Ok(padic.valuation(&x) == c.valuation)
        })
        .collect::<Result<_>>()?;
    Ok(checks.into_iter().all(|b| b))
}

/// `min { v_𝔭(β(j)) : 1 ≤ j ≤ jmax, j ≡ i mod q^d - 1 }`, from exact `β(j)`.
pub fn bernoulli_valuation_scan(ctx: &Context, i: CharacterIndex, jmax: u64) -> Option<(u64, i64)> {
    let betas = crate::goss::bernoulli_range(ctx, jmax);
    (1..=jmax)
        .filter(|j| j % i.modulus() == i.value())
        .filter_map(|j| ctx.padic().poly_valuation(&betas[j as usize]).finite().map(|v| (j, v)))
        .min_by_key(|&(j, v)| (v, j))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstmiReport {
    pub index: u64,
    pub m: u32,
    pub bound: f64,
    pub holds: bool,
}

pub fn estmi_check(ctx: &Context, i: CharacterIndex, m_cap: u32) -> Result<EstmiReport> {
    if i.value() == 0 || i.is_even() {
        return Err(Error::Precondition("the bound applies to 1 ≤ i ≤ q^d - 2 with (q-1) ∤ i".into()));
    }
    let r = m_invariant(ctx, i, None, m_cap)?;
    let m = r.value().ok_or_else(|| Error::Unresolved(format!("m({}) at cap {m_cap}", i.value())))?;
    let iv = i.value() as f64;
    let bound = iv / f64::from(ctx.d()) * (iv + 1.0).ln() / (ctx.q() as f64).ln();
    Ok(EstmiReport { index: i.value(), m, bound, holds: estmi_bound_holds(ctx, i.value(), u64::from(m)) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub index: u64,
    pub n_value: u32,
    pub neg_index: u64,
    pub m_value: u32,
    pub m_result: MInvariantResult,
    pub holds: bool,
}

/// `N_𝔭(i) ≤ m_𝔭(-i)`.
pub fn inequality_report(ctx: &Context, i: CharacterIndex, n_max: u32, m_cap: u32) -> Result<InequalityReport> {
    if i.value() == 0 {
        return Err(Error::Precondition("requires 1 ≤ i ≤ q^d - 2".into()));
    }
    let n_value = match n_invariant(ctx, i, n_max)? {
        NInvariant::Level(n) => n,
        NInvariant::NotFound(b) => {
            return Err(Error::Unresolved(format!("N({}) not found up to level {b}", i.value())))
        }
    };
    let neg = i.neg();
    let m_result = m_invariant(ctx, neg, None, m_cap)?;
    let m_value = m_result
        .value()
        .ok_or_else(|| Error::Unresolved(format!("m({}) at cap {m_cap}", neg.value())))?;
    Ok(InequalityReport {
        index: i.value(),
        n_value,
        neg_index: neg.value(),
        m_value,
        m_result,
        holds: n_value <= m_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;

    #[test]
    fn floors_and_bounds() {
        let c = Context::new(&FieldSpec::prime(3), &[0, 1]).unwrap();
        assert_eq!(estmi_floor(&c, 1), 0);
        assert!(estmi_bound_holds(&c, 1, 0));
        assert!(!estmi_bound_holds(&c, 1, 1));
        let c2 = Context::new(&FieldSpec::prime(3), &[1, 0, 1]).unwrap();
        // (7/2) log_3 8 ≈ 6.62
        assert_eq!(estmi_floor(&c2, 7), 6);
    }

    #[test]
    fn theta_prime_i1() {
        let c = Context::new(&FieldSpec::prime(3), &[0, 1]).unwrap();
        let i = CharacterIndex::new(&c, 1).unwrap();
        let r = m_invariant(&c, i, None, 64).unwrap();
        assert_eq!(r.value, MValue::Resolved(0));
        assert_eq!(r.certificate.witness_j, Some(1));
        assert!(verify_certificate(&c, &r).unwrap());
        let rep = inequality_report(&c, i, 3, 64).unwrap();
        assert_eq!((rep.n_value, rep.m_value, rep.holds), (0, 0, true));
    }
}
