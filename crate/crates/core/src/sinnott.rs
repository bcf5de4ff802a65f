//! The finite-level Sinnott map `s_n : F_𝔭[Γ_n] → C⁰(Z_p, A/𝔭^{n+1})`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::FieldElem;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::goss::{lfunction_exact, CharacterIndex};
use crate::local::{digits_for_precision, PadicElem, ZpApprox};
use crate::stickelberger::{theta_series, GroupRing, GroupRingElem};

/// A function `Z_p → A/𝔭^{n+1}` that factors through `Z/p^{m_n}`,
/// `m_n = ⌈log_p(n+1)⌉`; `values[y]` is its value at `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirFunction {
    pub level: u32,
    pub digits: u32,
    pub values: Vec<PadicElem>,
}

impl DirFunction {
    pub fn at(&self, y: &ZpApprox) -> Result<&PadicElem> {
        if y.digits() < self.digits {
            return Err(Error::InsufficientDigits {
                requested: self.values.len() as u64,
                available: y.modulus(),
            });
        }
        let m = self.values.len() as u64;
        Ok(&self.values[(y.value() % m) as usize])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

/// `m_n`.
pub fn level_digits(ctx: &Context, n: u32) -> u32 {
    digits_for_precision(ctx.p(), u64::from(n) + 1)
}

/// `y ↦ Σ_γ ω(c_γ) κ(γ)^y mod π^{n+1}`, tabulated on `Z/p^{m_n}`.
pub fn sinnott_map(ctx: &Context, lambda: &GroupRingElem) -> Result<DirFunction> {
    let n = lambda.level();
    let prec = n + 1;
    let digits = level_digits(ctx, n);
    let size = (ctx.p() as usize).pow(digits);
    let group = ctx.gamma_group(n)?;
    let padic = ctx.padic();
    let terms: Vec<(u32, FieldElem)> = lambda.terms().iter().map(|(&g, &c)| (g, c)).collect();
    let tables: Vec<Vec<PadicElem>> = terms
        .par_iter()
        .map(|&(g, c)| {
            let w = ctx.teichmuller_lift(c, prec)?;
            let kappa = padic.elem(group.rep(g), prec);
            let mut pw = padic.one(prec);
            let mut out = Vec::with_capacity(size);
            for _ in 0..size {
                out.push(padic.mul(&w, &pw));
                pw = padic.mul(&pw, &kappa);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut values = vec![padic.zero(prec); size];
    for t in &tables {
        for (v, x) in values.iter_mut().zip(t) {
            *v = padic.add(v, x);
        }
    }
    Ok(DirFunction { level: n, digits, values })
}

/// Nullspace vector of `[[1,1,1],[a1,a2,a3]]` over `F_𝔭`, free variable set to 1.
fn solve_kernel(f: &crate::algebra::Field, a: [FieldElem; 3]) -> Result<[FieldElem; 3]> {
    let mut rows = [[FieldElem::ONE; 3], a];
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..3 {
        if r == 2 {
            break;
        }
        let Some(pr) = (r..2).find(|&k| !rows[k][col].is_zero()) else { continue };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][col])?;
        for k in 0..3 {
            rows[r][k] = f.mul(rows[r][k], inv);
        }
        for other in 0..2 {
            if other != r && !rows[other][col].is_zero() {
                let factor = rows[other][col];
                for k in 0..3 {
                    rows[other][k] = f.sub(rows[other][k], f.mul(factor, rows[r][k]));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free = (0..3).find(|c| !pivots.contains(c)).expect("a 2×3 system has a free column");
    let mut x = [FieldElem::ZERO; 3];
    x[free] = FieldElem::ONE;
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = f.neg(rows[row][free]);
    }
    Ok(x)
}

/// A nonzero `x₁γ₁ + x₂γ₂ + x₃γ₃ ∈ ker s_n` with `κ(γ_i) = 1 + a_i π^n`.
pub fn kernel_witness(ctx: &Context, n: u32) -> Result<GroupRingElem> {
    if n == 0 {
        return Err(Error::Precondition("s_0 is injective; witnesses exist only for n ≥ 1".into()));
    }
    let res = ctx.residue();
    let a = [FieldElem(0), FieldElem(1), FieldElem(2)];
    let x = solve_kernel(res.field(), a)?;
    let ring = GroupRing::new(ctx, n)?;
    let pi_n = ctx.padic().pi_pow(n);
    let mut w = ring.zero();
    for (ai, xi) in a.iter().zip(x) {
        let rep = ctx.ring().add(&crate::algebra::Poly::one(), &ctx.ring().mul(&res.lift(*ai), &pi_n));
        let g = ring.group().index_of(&rep)?;
        w = ring.add(&w, &ring.scale(&ring.basis(g), xi))?;
    }
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StickLfunReport {
    pub index: u64,
    pub level: u32,
    pub y: u64,
    pub cutoff: usize,
    /// `matches[k]`: agreement of the `X^k` coefficients mod `π^{n+1}`.
    pub matches: Vec<bool>,
}

impl StickLfunReport {
    pub fn agree(&self) -> bool {
        self.matches.iter().all(|&b| b)
    }
}

/// Compares `s_n(Θ_n(X, ω̃^{-i}))(y)` with `L_𝔭(X, -y, ω^i) mod π^{n+1}`
/// coefficientwise for `k ≤ D`.
pub fn stick_lfun_check(
    ctx: &Context,
    i: CharacterIndex,
    n: u32,
    max_deg: usize,
    y: &ZpApprox,
) -> Result<StickLfunReport> {
    let theta = theta_series(ctx, n, i.neg(), max_deg)?;
    stick_lfun_compare(ctx, i, n, &theta.coeffs, y)
}

/// As [`stick_lfun_check`], for every `y mod p^{m_n}`, reusing one `Θ`.
pub fn stick_lfun_all(ctx: &Context, i: CharacterIndex, n: u32, max_deg: usize) -> Result<Vec<StickLfunReport>> {
    let theta = theta_series(ctx, n, i.neg(), max_deg)?;
    let digits = level_digits(ctx, n);
    ZpApprox::all_classes(ctx.p(), digits)?
        .map(|y| stick_lfun_compare(ctx, i, n, &theta.coeffs, &y))
        .collect()
}

fn stick_lfun_compare(
    ctx: &Context,
    i: CharacterIndex,
    n: u32,
    theta: &[GroupRingElem],
    y: &ZpApprox,
) -> Result<StickLfunReport> {
    let digits = level_digits(ctx, n);
    if y.digits() < digits {
        return Err(Error::InsufficientDigits {
            requested: u64::from(n) + 1,
            available: y.modulus(),
        });
    }
    let prec = n + 1;
    let l = lfunction_exact(ctx, i, &y.neg(), prec)?;
    let matches = theta
        .iter()
        .enumerate()
        .map(|(k, c)| Ok(sinnott_map(ctx, c)?.at(y)? == &l.coeff_or_zero(ctx.padic(), k)))
        .collect::<Result<_>>()?;
    Ok(StickLfunReport { index: i.value(), level: n, y: y.value(), cutoff: theta.len() - 1, matches })
}
