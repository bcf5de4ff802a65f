use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::local::{sgn_and_one_unit_infty, LaurentElem, ZpApprox};

/// `Σ_{a ∈ A_{+,n}} ⟨a⟩_∞^y`, known modulo `t^{min(prec, p^m)}`.
pub fn block_sum_infty(ctx: &Context, n: usize, y: &ZpApprox, prec: i64) -> Result<LaurentElem> {
    let lr = ctx.laurent();
    let monics: Vec<_> = ctx.ring().enumerate_monic(n).collect();
    let terms: Vec<LaurentElem> = monics
        .par_iter()
        .map(|a| {
            let (_, u) = sgn_and_one_unit_infty(ctx.field(), a)?;
            if u == LaurentElem::one() {
                return Ok(u);
            }
            lr.pow_zp(&u.truncate(prec), y)
        })
        .collect::<Result<_>>()?;
    let start = LaurentElem::exact_zero();
    Ok(terms.iter().fold(start, |s, t| lr.add(&s, t)).truncate(prec))
}

/// Number of blocks `n*` needed for absolute precision `target` when
/// `v_∞(x) = v`: least `n ≥ 1` with `p^{k-1} - k·v ≥ target` for all `k ≥ n`.
pub fn zeta_blocks(p: u32, v: i64, target: i64) -> u32 {
    let p = p as i128;
    let (v, target) = (v as i128, target as i128);
    let mut last_fail = 0u32;
    let mut pk = 1i128; // p^{k-1}
    let mut k = 1u32;
    loop {
        let f = pk - (k as i128) * v;
        let increasing = pk * (p - 1) >= v;
        if f < target {
            last_fail = k;
        } else if increasing {
            return last_fail + 1;
        }
        k += 1;
        pk = pk.saturating_mul(p);
    }
}

/// Least `m` such that `y` with `m` digits certifies `zeta_infty` to `target`.
pub fn zeta_infty_digits(ctx: &Context, v: i64, target: i64) -> u32 {
    let blocks = zeta_blocks(ctx.p(), v, target);
    let need = (0..blocks as i64).map(|n| target + n * v).max().unwrap_or(target).max(1);
    crate::local::digits_for_precision(ctx.p(), need as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaInfty {
    pub value: LaurentElem,
    /// Blocks `n < n*` summed; the rest is below the certified precision.
    pub blocks: u32,
    pub certified: i64,
}

/// `ζ_A(x, y) = Σ_n (Σ_{a ∈ A_{+,n}} ⟨a⟩_∞^{-y}) x^{-n}` modulo `t^{target}`.
///
/// Any nonzero `x` is accepted: the block bound `v_∞ ≥ p^{n-1}` makes the
/// series converge on all of `S_∞`, which is needed to reach `ζ_A(-j)` at
/// `x = θ^{-j}`.
pub fn zeta_infty(ctx: &Context, x: &LaurentElem, y: &ZpApprox, target: i64) -> Result<ZetaInfty> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    if y.p() != ctx.p() {
        return Err(Error::Precondition(format!("exponent is {}-adic", y.p())));
    }
    let lr = ctx.laurent();
    let v = x.val();
    let blocks = zeta_blocks(ctx.p(), v, target);
    let rel = target + i64::from(blocks) * v.abs() + 1;
    let xinv = lr.inv(x, rel.max(1))?;
    let neg_y = y.neg();
    let mut total = LaurentElem::exact_zero().truncate(target);
    let mut xpow = LaurentElem::one();
    for n in 0..blocks {
        let need = target + i64::from(n) * v;
        let block = block_sum_infty(ctx, n as usize, &neg_y, need)?;
        total = lr.add(&total, &lr.mul(&xpow, &block));
        xpow = lr.mul(&xpow, &xinv);
    }
    let certified = total.abs_prec().unwrap_or(target);
    if certified < target {
        return Err(Error::InsufficientDigits {
            requested: target.max(0) as u64,
            available: certified.max(0) as u64,
        });
    }
    Ok(ZetaInfty { value: total, blocks, certified })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpolationReport {
    pub euler_product: LaurentElem,
    pub zeta_side: LaurentElem,
    pub primes_used: usize,
    pub certified: i64,
    pub agree: bool,
}

/// Compares the truncated Euler product `Π_{deg 𝔮 ≤ D, 𝔮 ≠ 𝔭} (1 - ⟨π_𝔮⟩^{-y} x^{-deg 𝔮})^{-1}`
/// with `(1 - π_𝔭^{-s}) ζ_A(x, y)`.
pub fn infinity_interpolation_check(
    ctx: &Context,
    x: &LaurentElem,
    y: &ZpApprox,
    max_deg: usize,
    target: i64,
) -> Result<InterpolationReport> {
    if x.is_zero() || x.val() >= 0 {
        return Err(Error::Precondition(
            "the Euler-product tail is certified only for v_∞(x) < 0".into(),
        ));
    }
    let lr = ctx.laurent();
    let w = -x.val();
    let prec = target.min((max_deg as i64 + 1) * w);
    let xinv = lr.inv(x, prec + 1)?;
    let neg_y = y.neg();
    let one = LaurentElem::one();

    let mut euler = one.truncate(prec);
    let mut primes_used = 0;
    let mut xpow = one.clone();
    for k in 1..=max_deg {
        xpow = lr.mul(&xpow, &xinv);
        for q in ctx.irreducibles(k).iter() {
            if q == ctx.pi() {
                continue;
            }
            let (_, u) = sgn_and_one_unit_infty(ctx.field(), q)?;
            let uy = lr.pow_zp(&u.truncate(prec), &neg_y)?;
            let factor = lr.sub(&one, &lr.mul(&uy, &xpow));
            euler = lr.mul(&euler, &lr.inv(&factor, prec)?).truncate(prec);
            primes_used += 1;
        }
    }

    let zeta = zeta_infty(ctx, x, y, prec)?;
    let (_, upi) = sgn_and_one_unit_infty(ctx.field(), ctx.pi())?;
    let xd = lr.pow_int(&xinv, u64::from(ctx.d()));
    let local = lr.sub(&one, &lr.mul(&xd, &lr.pow_zp(&upi.truncate(prec), &neg_y)?));
    let zeta_side = lr.mul(&local, &zeta.value).truncate(prec);

    let certified = euler.abs_prec().unwrap_or(prec).min(zeta_side.abs_prec().unwrap_or(prec));
    let agree = euler.truncate(certified) == zeta_side.truncate(certified);
    Ok(InterpolationReport { euler_product: euler, zeta_side, primes_used, certified, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;
    use crate::goss::zeta_neg;

    #[test]
    fn block_counts() {
        // v = 0: need p^{n-1} ≥ target
        assert_eq!(zeta_blocks(3, 0, 1), 1);
        assert_eq!(zeta_blocks(3, 0, 10), 4);
        assert_eq!(zeta_blocks(3, 20, 10), 6);
        assert_eq!(zeta_blocks(3, -2, 14), 3);
    }

    #[test]
    fn negative_integers_match_bernoulli_side() {
        let ctx = Context::new(&FieldSpec::prime(3), &[0, 1]).unwrap();
        for j in [1u64, 2, 4, 7] {
            let target = 6;
            let x = LaurentElem::theta_pow(-(j as i64));
            let m = zeta_infty_digits(&ctx, j as i64, target);
            let y = ZpApprox::from_int(3, -(j as i64), m).unwrap();
            let z = zeta_infty(&ctx, &x, &y, target).unwrap();
            let expect = LaurentElem::from_poly(&zeta_neg(&ctx, j)).truncate(z.certified);
            assert_eq!(z.value, expect, "j = {j}");
        }
    }

    #[test]
    fn interpolation_at_theta_squared() {
        let ctx = Context::new(&FieldSpec::prime(3), &[0, 1]).unwrap();
        let x = LaurentElem::theta_pow(2);
        for y in ZpApprox::all_classes(3, 2).unwrap() {
            let r = infinity_interpolation_check(&ctx, &x, &y, 6, 10).unwrap();
            assert!(r.agree);
            assert!(r.certified >= 8);
        }
        assert!(infinity_interpolation_check(&ctx, &LaurentElem::one(), &ZpApprox::new(3, 0, 1).unwrap(), 3, 4).is_err());
    }
}
