use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::group::{GammaElem, GroupRing, GroupRingElem};
use crate::algebra::{FieldElem, Poly};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::goss::CharacterIndex;
use crate::local::PadicElem;

/// `(δ, γ)` with `π_𝔮 ≡ ω(δ)·γ (mod π^{n+1})`, `δ = π_𝔮 mod π`, `γ` a one-unit.
pub fn frobenius_decompose(ctx: &Context, pi_q: &Poly, n: u32) -> Result<(FieldElem, GammaElem)> {
    if !pi_q.is_monic() {
        return Err(Error::NotMonic);
    }
    let delta = ctx.residue().reduce(pi_q);
    if delta.is_zero() {
        return Err(Error::Precondition("π divides the given prime".into()));
    }
    let padic = ctx.padic();
    let gamma = padic.one_unit_part(&padic.elem(pi_q, n + 1))?;
    Ok((delta, GammaElem { rep: gamma.rep().clone(), level: n }))
}

/// One Euler factor `(1 - c·γ^{-1} X^k)^{-1}` before the character is applied.
#[derive(Clone, Debug)]
pub(crate) struct EulerFactor {
    deg: usize,
    delta: FieldElem,
    gamma_inv: u32,
}

pub(crate) fn euler_factors(ctx: &Context, n: u32, max_deg: usize) -> Result<Arc<Vec<EulerFactor>>> {
    if let Some(v) = ctx.cached_euler(n, max_deg) {
        return Ok(v);
    }
    let group = ctx.gamma_group(n)?;
    let padic = ctx.padic();
    let prec = n + 1;
    let mut winv: Vec<Option<PadicElem>> = vec![None; ctx.qd() as usize];
    for r in ctx.residue().field().elements().filter(|r| !r.is_zero()) {
        winv[r.0 as usize] = Some(padic.inv(&ctx.teichmuller_lift(r, prec)?)?);
    }
    let mut out = Vec::new();
    for k in 1..=max_deg {
        let primes = ctx.irreducibles(k);
        let part: Vec<EulerFactor> = primes
            .par_iter()
            .filter(|q| *q != ctx.pi())
            .map(|q| {
                let delta = ctx.residue().reduce(q);
                let w = winv[delta.0 as usize].as_ref().expect("coprime to π");
                let gamma = padic.mul(&padic.elem(q, prec), w);
                let g = group.index_of(gamma.rep())?;
                Ok(EulerFactor { deg: k, delta, gamma_inv: group.inverse_index(g) })
            })
            .collect::<Result<_>>()?;
        out.extend(part);
    }
    Ok(ctx.store_euler(n, max_deg, Arc::new(out)))
}

/// Dense `Θ_n(X, ω̃^i) mod (p, X^{D+1})`: `coeffs[k][γ]`.
fn theta_dense(
    ctx: &Context,
    n: u32,
    i: CharacterIndex,
    max_deg: usize,
) -> Result<Vec<Vec<FieldElem>>> {
    let group = ctx.gamma_group(n)?;
    let f = ctx.residue().field();
    let size = group.order();
    let mut s = vec![vec![FieldElem::ZERO; size]; max_deg + 1];
    s[0][group.identity() as usize] = FieldElem::ONE;
    let exp = -(i.value() as i64);
    for fac in euler_factors(ctx, n, max_deg)?.iter() {
        let c = f.pow(fac.delta, exp)?;
        let row = group.row(fac.gamma_inv);
        // multiply by Σ_r (c γ^{-1} X^k)^r: ascending m reuses updated terms
        for m in fac.deg..=max_deg {
            let (lo, hi) = s.split_at_mut(m);
            let src = &lo[m - fac.deg];
            let dst = &mut hi[0];
            for (h, &x) in src.iter().enumerate() {
                if !x.is_zero() {
                    let t = row[h] as usize;
                    dst[t] = f.add(dst[t], f.mul(c, x));
                }
            }
        }
    }
    Ok(s)
}

/// `Θ_n(X, ω̃^i) mod p`, truncated after `X^D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaSeries {
    pub level: u32,
    pub index: u64,
    pub cutoff: usize,
    pub coeffs: Vec<GroupRingElem>,
}

pub fn theta_series(ctx: &Context, n: u32, i: CharacterIndex, max_deg: usize) -> Result<ThetaSeries> {
    if max_deg < 1 {
        return Err(Error::Precondition("the X-cutoff must be at least 1".into()));
    }
    let ring = GroupRing::new(ctx, n)?;
    let dense = theta_dense(ctx, n, i, max_deg)?;
    Ok(ThetaSeries {
        level: n,
        index: i.value(),
        cutoff: max_deg,
        coeffs: dense.iter().map(|v| ring.from_dense(v)).collect(),
    })
}

/// `d(n+1) + 2`.
pub fn default_cutoff(ctx: &Context, n: u32) -> usize {
    (ctx.d() * (n + 1)) as usize + 2
}

/// Multiplies `Θ` back by every Euler factor; true iff the result is `1 mod X^{D+1}`.
pub fn euler_inverse_check(ctx: &Context, n: u32, i: CharacterIndex, max_deg: usize) -> Result<bool> {
    let group = ctx.gamma_group(n)?;
    let f = ctx.residue().field();
    let mut s = theta_dense(ctx, n, i, max_deg)?;
    let exp = -(i.value() as i64);
    for fac in euler_factors(ctx, n, max_deg)?.iter() {
        let c = f.pow(fac.delta, exp)?;
        let row = group.row(fac.gamma_inv);
        for m in (fac.deg..=max_deg).rev() {
            let (lo, hi) = s.split_at_mut(m);
            let src = &lo[m - fac.deg];
            let dst = &mut hi[0];
            for (h, &x) in src.iter().enumerate() {
                if !x.is_zero() {
                    let t = row[h] as usize;
                    dst[t] = f.sub(dst[t], f.mul(c, x));
                }
            }
        }
    }
    let id = group.identity() as usize;
    Ok(s.iter().enumerate().all(|(k, v)| {
        v.iter().enumerate().all(|(g, &x)| x == if k == 0 && g == id { FieldElem::ONE } else { FieldElem::ZERO })
    }))
}

/// `Θ_n^#(X, ω̃^i) mod p`: `Θ_n` for odd `i`, `Θ_n/(1 - X)` for even `i`.
/// The coefficients of `X^k` for `d(n+1) ≤ k ≤ D` must vanish; for even `i`
/// the division must be exact.
pub fn theta_sharp(ctx: &Context, n: u32, i: CharacterIndex, max_deg: Option<usize>) -> Result<ThetaSeries> {
    if i.value() == 0 {
        return Err(Error::Precondition("the trivial character is excluded".into()));
    }
    let start = (ctx.d() * (n + 1)) as usize;
    let cutoff = max_deg.unwrap_or_else(|| default_cutoff(ctx, n));
    if cutoff < start {
        return Err(Error::Precondition(format!("X-cutoff {cutoff} is below d(n+1) = {start}")));
    }
    let ring = GroupRing::new(ctx, n)?;
    let f = ring.field().clone();
    let mut s = theta_dense(ctx, n, i, cutoff)?;
    for (k, coeff) in s.iter().enumerate().skip(start) {
        if coeff.iter().any(|c| !c.is_zero()) {
            return Err(Error::DegreeWindow {
                level: n,
                index: i.value() as u32,
                degree: k,
                window_start: start,
                cutoff,
            });
        }
    }
    if i.is_even() {
        // Q_k = Σ_{l ≤ k} s_l; the remainder is Q_D
        for k in 1..s.len() {
            let (lo, hi) = s.split_at_mut(k);
            for (x, &y) in hi[0].iter_mut().zip(&lo[k - 1]) {
                *x = f.add(*x, y);
            }
        }
        if s[cutoff].iter().any(|c| !c.is_zero()) {
            return Err(Error::DivisionRemainder { level: n, index: i.value() as u32 });
        }
    }
    Ok(ThetaSeries {
        level: n,
        index: i.value(),
        cutoff,
        coeffs: s.iter().map(|v| ring.from_dense(v)).collect(),
    })
}

/// `Θ_n^#(1, ω̃^i) mod p`, under the same guards as [`theta_sharp`].
pub fn theta_sharp_at_one(
    ctx: &Context,
    n: u32,
    i: CharacterIndex,
    max_deg: Option<usize>,
) -> Result<GroupRingElem> {
    let sharp = theta_sharp(ctx, n, i, max_deg)?;
    let ring = GroupRing::new(ctx, n)?;
    sharp.coeffs.iter().try_fold(ring.zero(), |acc, c| ring.add(&acc, c))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "level", rename_all = "snake_case")]
pub enum NInvariant {
    Level(u32),
    /// Nonzero at no level `≤` the carried bound.
    NotFound(u32),
}

impl NInvariant {
    pub fn level(self) -> Option<u32> {
        match self {
            NInvariant::Level(n) => Some(n),
            NInvariant::NotFound(_) => None,
        }
    }
}

/// `N_𝔭(i)`: least `n ≤ n_max` with `Θ_n^#(1, ω̃^i) ≢ 0 mod p`.
pub fn n_invariant(ctx: &Context, i: CharacterIndex, n_max: u32) -> Result<NInvariant> {
    if i.value() == 0 {
        return Err(Error::Precondition("N(i) is defined for 1 ≤ i ≤ q^d - 2".into()));
    }
    for n in 0..=n_max {
        if !theta_sharp_at_one(ctx, n, i, None)?.is_zero() {
            return Ok(NInvariant::Level(n));
        }
    }
    Ok(NInvariant::NotFound(n_max))
}
