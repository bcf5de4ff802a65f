//! Truncated `𝔭`-adic arithmetic: elements of `A/𝔭^M` with explicit precision.
//!
//! A [`PadicElem`] is a representative of degree `< d·M` together with its
//! precision `M`. Binary operations take the minimum precision of their
//! operands; there is no implicit exact/inexact mixing.

use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use super::zp::ZpApprox;
use super::Valuation;
use crate::algebra::{FieldElem, Poly, PolyRing, PrimeData};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicElem {
    rep: Poly,
    prec: u32,
}

impl PadicElem {
    pub fn rep(&self) -> &Poly {
        &self.rep
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Zero modulo `π^prec`; not an exact zero.
    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

/// Arithmetic context for `A_𝔭` truncated at finite precision.
#[derive(Debug)]
pub struct Padic {
    ring: PolyRing,
    prime: PrimeData,
    pi_powers: RwLock<Vec<Poly>>,
}

impl Clone for Padic {
    fn clone(&self) -> Self {
        Padic::new(self.ring.clone(), self.prime.clone())
    }
}

impl Padic {
    pub fn new(ring: PolyRing, prime: PrimeData) -> Self {
        Padic { ring, prime, pi_powers: RwLock::new(vec![Poly::one()]) }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn prime(&self) -> &PrimeData {
        &self.prime
    }

    /// `π^k`.
    pub fn pi_pow(&self, k: u32) -> Poly {
        let k = k as usize;
        if let Some(p) = self.pi_powers.read().expect("lock").get(k) {
            return p.clone();
        }
        let mut cache = self.pi_powers.write().expect("lock");
        while cache.len() <= k {
            let next = self.ring.mul(cache.last().expect("nonempty"), self.prime.pi());
            cache.push(next);
        }
        cache[k].clone()
    }

    pub fn elem(&self, a: &Poly, prec: u32) -> PadicElem {
        PadicElem { rep: self.ring.rem_monic(a, &self.pi_pow(prec)), prec }
    }

    pub fn one(&self, prec: u32) -> PadicElem {
        self.elem(&Poly::one(), prec)
    }

    pub fn zero(&self, prec: u32) -> PadicElem {
        PadicElem { rep: Poly::zero(), prec }
    }

    /// Drop to a lower precision.
    pub fn truncate(&self, a: &PadicElem, prec: u32) -> Result<PadicElem> {
        if prec > a.prec {
            return Err(Error::PrecisionExceeded { requested: prec, available: a.prec });
        }
        Ok(self.elem(&a.rep, prec))
    }

    pub fn add(&self, a: &PadicElem, b: &PadicElem) -> PadicElem {
        self.elem(&self.ring.add(&a.rep, &b.rep), a.prec.min(b.prec))
    }

    pub fn sub(&self, a: &PadicElem, b: &PadicElem) -> PadicElem {
        self.elem(&self.ring.sub(&a.rep, &b.rep), a.prec.min(b.prec))
    }

    pub fn neg(&self, a: &PadicElem) -> PadicElem {
        PadicElem { rep: self.ring.neg(&a.rep), prec: a.prec }
    }

    pub fn mul(&self, a: &PadicElem, b: &PadicElem) -> PadicElem {
        let prec = a.prec.min(b.prec);
        let len = self.prime.degree() as usize * prec as usize;
        self.elem(&self.ring.mul_trunc(&a.rep, &b.rep, 2 * len), prec)
    }

    pub fn scale(&self, a: &PadicElem, c: FieldElem) -> PadicElem {
        PadicElem { rep: self.ring.scale(&a.rep, c), prec: a.prec }
    }

    /// `a mod π` as a polynomial of degree `< d`.
    pub fn residue_rep(&self, a: &PadicElem) -> Poly {
        self.ring.rem_monic(&a.rep, self.prime.pi())
    }

    pub fn is_unit(&self, a: &PadicElem) -> bool {
        !self.residue_rep(a).is_zero()
    }

    pub fn is_one_unit(&self, a: &PadicElem) -> bool {
        self.residue_rep(a).is_one()
    }

    /// `π`-adic valuation; a zero representative only certifies `≥ M`.
    pub fn valuation(&self, a: &PadicElem) -> Valuation {
        if a.rep.is_zero() {
            return Valuation::AtLeast(a.prec as i64);
        }
        self.poly_valuation(&a.rep)
    }

    /// Exact `π`-adic valuation of a polynomial.
    pub fn poly_valuation(&self, a: &Poly) -> Valuation {
        if a.is_zero() {
            return Valuation::Infinite;
        }
        let mut x = a.clone();
        let mut k = 0i64;
        loop {
            let (q, r) = self.ring.divrem(&x, self.prime.pi()).expect("nonzero prime");
            if !r.is_zero() {
                return Valuation::Finite(k);
            }
            x = q;
            k += 1;
        }
    }

    /// `a / π`, defined when `π | a`; the result has precision `M - 1`.
    pub fn div_pi(&self, a: &PadicElem) -> Result<PadicElem> {
        if a.prec == 0 {
            return Err(Error::Precondition("cannot divide a precision-0 element by π".into()));
        }
        let (q, r) = self.ring.divrem(&a.rep, self.prime.pi())?;
        if !r.is_zero() {
            return Err(Error::Precondition("element is not divisible by π".into()));
        }
        Ok(self.elem(&q, a.prec - 1))
    }

    pub fn inv(&self, a: &PadicElem) -> Result<PadicElem> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        let modulus = self.pi_pow(a.prec);
        let (g, s, _) = self.ring.ext_gcd(&a.rep, &modulus);
        if !g.is_one() {
            return Err(Error::NotAUnit);
        }
        Ok(self.elem(&s, a.prec))
    }

    pub fn pow_int(&self, a: &PadicElem, mut k: u64) -> PadicElem {
        let mut result = self.one(a.prec);
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(&result, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// `x^{q^d}`, computed as `d` substitutions `θ ↦ θ^q`.
    fn frobenius_d(&self, x: &PadicElem) -> PadicElem {
        let mut y = x.rep.clone();
        for _ in 0..self.prime.degree() {
            y = self.ring.rem_monic(&self.ring.frobenius(&y, 1), &self.pi_pow(x.prec));
        }
        PadicElem { rep: y, prec: x.prec }
    }

    /// Teichmüller representative `ω(a)`: the root of unity `≡ a (mod π)`.
    pub fn teichmuller(&self, a: &PadicElem) -> Result<PadicElem> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        // Each application of x ↦ x^{q^d} multiplies the π-adic accuracy by q^d.
        let qd = (self.ring.field().order() as u64).pow(self.prime.degree());
        let mut iterations = 1u32;
        let mut reach = qd;
        while reach < a.prec as u64 {
            reach = reach.saturating_mul(qd);
            iterations += 1;
        }
        let mut x = a.clone();
        for _ in 0..=iterations {
            x = self.frobenius_d(&x);
        }
        debug_assert_eq!(self.frobenius_d(&x), x);
        Ok(x)
    }

    /// `⟨a⟩ = a · ω(a)^{-1} ∈ 1 + 𝔭`.
    pub fn one_unit_part(&self, a: &PadicElem) -> Result<PadicElem> {
        let w = self.teichmuller(a)?;
        Ok(self.mul(a, &self.inv(&w)?))
    }

    /// `u^y` for a one-unit `u`, at precision `min(M, p^m)`.
    pub fn pow_zp(&self, u: &PadicElem, y: &ZpApprox) -> Result<PadicElem> {
        let cap = u64::from(u.prec).min(y.modulus());
        self.pow_zp_to(u, y, cap as u32)
    }

    /// `u^y` at an explicitly requested precision, which must not exceed
    /// `p^m` (digits of `y` beyond `m` cannot be recovered) nor `M`.
    pub fn pow_zp_to(&self, u: &PadicElem, y: &ZpApprox, prec: u32) -> Result<PadicElem> {
        if !self.is_one_unit(u) {
            return Err(Error::NotAOneUnit);
        }
        if prec as u64 > y.modulus() {
            return Err(Error::InsufficientDigits { requested: prec as u64, available: y.modulus() });
        }
        let u = self.truncate(u, prec)?;
        Ok(self.pow_int(&u, y.value()))
    }
}
