use rayon::prelude::*;

use super::PolyX;
use crate::algebra::{Poly, PolyRing};
use crate::context::Context;

/// Largest `n` with `q^n ≤ x` (for `x ≥ 1`).
pub fn log_floor(q: u64, x: u64) -> u32 {
    let mut n = 0u32;
    let mut qn = q;
    while qn <= x {
        n += 1;
        match qn.checked_mul(q) {
            Some(v) => qn = v,
            None => break,
        }
    }
    n
}

/// `S_n(j) = Σ_{a ∈ A_{+,n}} a^j`, exact.
pub fn power_sum(ctx: &Context, n: usize, j: u64) -> Poly {
    let ring = ctx.ring();
    let terms: Vec<Poly> = ring.enumerate_monic(n).collect();
    terms.par_iter().map(|a| ring.pow(a, j)).collect::<Vec<_>>().iter().fold(Poly::zero(), |s, t| ring.add(&s, t))
}

/// `[S_n(0), …, S_n(jmax)]`, using running powers `a^j = a^{j-1}·a`.
pub fn power_sums(ctx: &Context, n: usize, jmax: u64) -> Vec<Poly> {
    let ring = ctx.ring();
    let monics: Vec<Poly> = ring.enumerate_monic(n).collect();
    let per_elem: Vec<Vec<Poly>> = monics.par_iter().map(|a| running_powers(ring, a, jmax)).collect();
    let mut sums = vec![Poly::zero(); jmax as usize + 1];
    for powers in &per_elem {
        for (s, p) in sums.iter_mut().zip(powers) {
            ring.add_assign(s, p);
        }
    }
    sums
}

fn running_powers(ring: &PolyRing, a: &Poly, jmax: u64) -> Vec<Poly> {
    let mut out = Vec::with_capacity(jmax as usize + 1);
    let mut cur = Poly::one();
    out.push(cur.clone());
    for _ in 0..jmax {
        cur = ring.mul(&cur, a);
        out.push(cur.clone());
    }
    out
}

/// `Z(X,j) = Σ_n S_n(j) X^n`; the sum stops at `⌊log_q(j+1)⌋`.
pub fn zeta_poly(ctx: &Context, j: u64) -> PolyX<Poly> {
    let top = log_floor(ctx.q(), j + 1) as usize;
    PolyX::from_coeffs((0..=top).map(|n| power_sum(ctx, n, j)).collect())
}

/// `[Z(X,0), …, Z(X,jmax)]`.
pub fn zeta_polys(ctx: &Context, jmax: u64) -> Vec<PolyX<Poly>> {
    let top = log_floor(ctx.q(), jmax + 1) as usize;
    let table: Vec<Vec<Poly>> = (0..=top).map(|n| power_sums(ctx, n, jmax)).collect();
    (0..=jmax)
        .map(|j| {
            let deg = log_floor(ctx.q(), j + 1) as usize;
            PolyX::from_coeffs((0..=deg).map(|n| table[n][j as usize].clone()).collect())
        })
        .collect()
}

fn bernoulli_from_zeta(ctx: &Context, z: &PolyX<Poly>, j: u64) -> Poly {
    let ring = ctx.ring();
    if j == 0 || !j.is_multiple_of(ctx.q() - 1) {
        z.eval_one(ring)
    } else {
        ring.neg(&z.derivative_at_one(ring))
    }
}

/// `β(j)`: `Z(1,j)`, or `-Z'(1,j)` at the trivial zeros `j ≡ 0 mod q-1`, `j ≥ 1`.
pub fn bernoulli_goss(ctx: &Context, j: u64) -> Poly {
    bernoulli_from_zeta(ctx, &zeta_poly(ctx, j), j)
}

/// `[β(0), …, β(jmax)]`.
pub fn bernoulli_range(ctx: &Context, jmax: u64) -> Vec<Poly> {
    zeta_polys(ctx, jmax)
        .iter()
        .enumerate()
        .map(|(j, z)| bernoulli_from_zeta(ctx, z, j as u64))
        .collect()
}

/// `ζ_A(-j) = Z(1,j)`.
pub fn zeta_neg(ctx: &Context, j: u64) -> Poly {
    zeta_poly(ctx, j).eval_one(ctx.ring())
}
