use rayon::prelude::*;

use super::zeta::log_floor;
use super::{CharacterIndex, PolyX};
use crate::algebra::FieldElem;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::local::{PadicElem, ZpApprox};

fn check_exponent(ctx: &Context, y: &ZpApprox, prec: u32) -> Result<()> {
    if y.p() != ctx.p() {
        return Err(Error::Precondition(format!(
            "exponent is {}-adic but the characteristic is {}",
            y.p(),
            ctx.p()
        )));
    }
    if prec == 0 {
        return Err(Error::Precondition("precision must be at least 1".into()));
    }
    if u64::from(prec) > y.modulus() {
        return Err(Error::InsufficientDigits { requested: prec as u64, available: y.modulus() });
    }
    Ok(())
}

/// Least `j ≥ 1` with `j ≡ y (mod p^m)` and `j ≡ i (mod q^d - 1)`.
pub fn crt_exponent(ctx: &Context, i: CharacterIndex, y: &ZpApprox) -> Result<u64> {
    let pm = y.modulus();
    let n = ctx.char_modulus();
    let too_large = || Error::TooLarge(format!("CRT modulus {pm}·{n}"));
    let total = pm.checked_mul(n).ok_or_else(too_large)?;
    for k in 0..n {
        let j = y.value() + k * pm;
        if j % n == i.value() {
            return Ok(if j == 0 { total } else { j });
        }
    }
    unreachable!("p^m and q^d - 1 are coprime")
}

/// `L_𝔭(X, y, ω^i) mod 𝔭^M` as `(1 - π^j X^d) Z(X, j)` for the CRT exponent `j`.
pub fn lfunction_exact(
    ctx: &Context,
    i: CharacterIndex,
    y: &ZpApprox,
    prec: u32,
) -> Result<PolyX<PadicElem>> {
    check_exponent(ctx, y, prec)?;
    let j = crt_exponent(ctx, i, y)?;
    let padic = ctx.padic();
    let top = log_floor(ctx.q(), j + 1) as usize;
    let sums: Vec<PadicElem> = (0..=top)
        .map(|n| {
            let monics: Vec<_> = ctx.ring().enumerate_monic(n).collect();
            let powers: Vec<PadicElem> =
                monics.par_iter().map(|a| padic.pow_int(&padic.elem(a, prec), j)).collect();
            powers.iter().fold(padic.zero(prec), |s, t| padic.add(&s, t))
        })
        .collect();
    let pi_j = if j >= u64::from(prec) {
        padic.zero(prec)
    } else {
        padic.elem(&padic.pi_pow(j as u32), prec)
    };
    let d = ctx.d() as usize;
    let coeffs = (0..=top + d)
        .map(|n| {
            let s = sums.get(n).cloned().unwrap_or_else(|| padic.zero(prec));
            match n.checked_sub(d).and_then(|k| sums.get(k)) {
                Some(lower) => padic.sub(&s, &padic.mul(&pi_j, lower)),
                None => s,
            }
        })
        .collect();
    Ok(PolyX::from_padic(coeffs))
}

/// Coefficients `Σ_{a ∈ A_{+,n}, π ∤ a} ω^i(a)⟨a⟩^y mod 𝔭^M` for `n ≤ D`,
/// by direct enumeration.
pub fn lfunction_direct(
    ctx: &Context,
    i: CharacterIndex,
    y: &ZpApprox,
    prec: u32,
    max_deg: usize,
) -> Result<PolyX<PadicElem>> {
    check_exponent(ctx, y, prec)?;
    let padic = ctx.padic();
    let res = ctx.residue();
    // per residue class: (ω^i, ω^{-1})
    let mut table: Vec<Option<(PadicElem, PadicElem)>> = vec![None; res.order() as usize];
    for r in res.field().elements().filter(|r| !r.is_zero()) {
        let w = ctx.teichmuller_lift(r, prec)?;
        table[r.0 as usize] = Some((padic.pow_int(&w, i.value()), padic.inv(&w)?));
    }
    let mut coeffs = Vec::with_capacity(max_deg + 1);
    for n in 0..=max_deg {
        let monics: Vec<_> = ctx.ring().enumerate_monic(n).collect();
        let terms: Vec<Option<PadicElem>> = monics
            .par_iter()
            .map(|a| -> Result<Option<PadicElem>> {
                let r: FieldElem = res.reduce(a);
                let Some((wi, winv)) = &table[r.0 as usize] else {
                    return Ok(None);
                };
                let unit = padic.mul(&padic.elem(a, prec), winv);
                Ok(Some(padic.mul(wi, &padic.pow_zp_to(&unit, y, prec)?)))
            })
            .collect::<Result<_>>()?;
        let sum = terms.iter().flatten().fold(padic.zero(prec), |s, t| padic.add(&s, t));
        coeffs.push(sum);
    }
    Ok(PolyX::from_padic(coeffs))
}

/// `(L_𝔭(1, y, ω^i), (d/dX) L_𝔭(X, y, ω^i)|_{X=1})` modulo `𝔭^M`.
pub fn lfunction_special(
    ctx: &Context,
    i: CharacterIndex,
    y: &ZpApprox,
    prec: u32,
) -> Result<(PadicElem, PadicElem)> {
    let l = lfunction_exact(ctx, i, y, prec)?;
    Ok((l.eval_one(ctx.padic()), l.derivative_at_one(ctx.padic())))
}
