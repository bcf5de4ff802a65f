//! Power sums, `Z(X,j)`, Bernoulli-Goss numbers, the Carlitz-Goss zeta
//! function at `∞`, and the `𝔭`-adic L-function.

mod infinity;
mod lfunction;
mod zeta;

use serde::{Deserialize, Serialize};

use crate::algebra::{Poly, PolyRing};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::local::{Padic, PadicElem};

pub use infinity::{
    zeta_blocks, zeta_infty_digits,
    block_sum_infty, infinity_interpolation_check, zeta_infty, InterpolationReport, ZetaInfty,
};
pub use lfunction::{crt_exponent, lfunction_direct, lfunction_exact, lfunction_special};
pub use zeta::{
    bernoulli_goss, bernoulli_range, log_floor, power_sum, power_sums, zeta_neg, zeta_poly,
    zeta_polys,
};

/// A character `ω^i` of `F_𝔭^*`, `0 ≤ i ≤ q^d - 2`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharacterIndex {
    i: u64,
    modulus: u64,
    q: u64,
}

impl CharacterIndex {
    pub fn new(ctx: &Context, i: u64) -> Result<Self> {
        let modulus = ctx.char_modulus();
        if i >= modulus {
            return Err(Error::CharacterOutOfRange { index: i, max: modulus - 1 });
        }
        Ok(CharacterIndex { i, modulus, q: ctx.q() })
    }

    /// Reduce an arbitrary integer modulo `q^d - 1`.
    pub fn reduce(ctx: &Context, i: i64) -> Self {
        let modulus = ctx.char_modulus();
        let i = (i as i128).rem_euclid(modulus as i128) as u64;
        CharacterIndex { i, modulus, q: ctx.q() }
    }

    pub fn all(ctx: &Context) -> impl Iterator<Item = CharacterIndex> {
        let (modulus, q) = (ctx.char_modulus(), ctx.q());
        (0..modulus).map(move |i| CharacterIndex { i, modulus, q })
    }

    pub fn value(self) -> u64 {
        self.i
    }

    /// `q^d - 1`.
    pub fn modulus(self) -> u64 {
        self.modulus
    }

    /// Even iff `(q - 1) | i`.
    pub fn is_even(self) -> bool {
        self.i.is_multiple_of(self.q - 1)
    }

    pub fn neg(self) -> Self {
        CharacterIndex { i: (self.modulus - self.i) % self.modulus, ..self }
    }
}

/// A polynomial in `X` with coefficients in `R`, little-endian.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyX<R> {
    coeffs: Vec<R>,
}

impl<R> PolyX<R> {
    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&R> {
        self.coeffs.get(k)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl PolyX<Poly> {
    pub fn from_coeffs(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyX { coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_one(&self, ring: &PolyRing) -> Poly {
        self.coeffs.iter().fold(Poly::zero(), |acc, c| ring.add(&acc, c))
    }

    /// `(d/dX) f |_{X=1}`.
    pub fn derivative_at_one(&self, ring: &PolyRing) -> Poly {
        let f = ring.field();
        self.coeffs.iter().enumerate().skip(1).fold(Poly::zero(), |acc, (n, c)| {
            ring.add(&acc, &ring.scale(c, f.from_int(n as i64)))
        })
    }
}

impl PolyX<PadicElem> {
    /// Trailing zero coefficients are dropped; the constant term is kept so the
    /// precision stays visible.
    pub fn from_padic(mut coeffs: Vec<PadicElem>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyX { coeffs }
    }

    pub fn prec(&self) -> u32 {
        self.coeffs.iter().map(|c| c.prec()).min().unwrap_or(0)
    }

    /// Coefficient of `X^k`, zero beyond the stored length.
    pub fn coeff_or_zero(&self, padic: &Padic, k: usize) -> PadicElem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| padic.zero(self.prec()))
    }

    pub fn eval_one(&self, padic: &Padic) -> PadicElem {
        self.coeffs.iter().fold(padic.zero(self.prec()), |acc, c| padic.add(&acc, c))
    }

    pub fn derivative_at_one(&self, padic: &Padic) -> PadicElem {
        let f = padic.ring().field();
        self.coeffs.iter().enumerate().skip(1).fold(padic.zero(self.prec()), |acc, (n, c)| {
            padic.add(&acc, &padic.scale(c, f.from_int(n as i64)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;

    #[test]
    fn character_parity() {
        let ctx = Context::new(&FieldSpec::prime(3), &[1, 0, 1]).unwrap();
        let odd: Vec<u64> =
            CharacterIndex::all(&ctx).filter(|c| !c.is_even()).map(|c| c.value()).collect();
        assert_eq!(odd, vec![1, 3, 5, 7]);
        assert_eq!(CharacterIndex::new(&ctx, 3).unwrap().neg().value(), 5);
        assert_eq!(CharacterIndex::reduce(&ctx, -1).value(), 7);
        assert!(CharacterIndex::new(&ctx, 8).is_err());
    }
}
