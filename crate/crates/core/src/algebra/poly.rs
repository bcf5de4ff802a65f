//! Dense univariate polynomials over a [`Field`].
//!
//! [`Poly`] is a bare coefficient vector in canonical form; all arithmetic
//! goes through a [`PolyRing`], which owns the coefficient field. The same
//! code serves `A = F_q[θ]`, moduli over `F_p`, and residue computations.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::{Field, FieldElem};
use crate::error::{Error, Result};

/// Little-endian coefficients, no trailing zeros; the empty vector is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![FieldElem::ONE] }
    }

    pub fn constant(c: FieldElem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `θ^k`.
    pub fn monomial(c: FieldElem, k: usize) -> Poly {
        let mut coeffs = vec![FieldElem::ZERO; k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn theta() -> Poly {
        Poly::monomial(FieldElem::ONE, 1)
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElem {
        self.coeffs.get(k).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElem::ONE
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElem::ONE
    }

    /// Integer encodings of the coefficients, as used in JSON and on the CLI.
    pub fn to_ints(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.0).collect()
    }
}

/// Degree first, then coefficients from the top down; this is the canonical
/// enumeration order of monic polynomials of a fixed degree.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: Field,
}

impl PolyRing {
    pub fn new(field: Field) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Validating constructor from integer encodings.
    pub fn from_ints(&self, ints: &[u64]) -> Result<Poly> {
        let coeffs = ints.iter().map(|&c| self.field.elem(c)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }

    pub fn from_int(&self, n: i64) -> Poly {
        Poly::constant(self.field.from_int(n))
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let f = &self.field;
        let (long, short) = if a.coeffs.len() >= b.coeffs.len() { (a, b) } else { (b, a) };
        let mut out = long.coeffs.clone();
        for (o, &s) in out.iter_mut().zip(&short.coeffs) {
            *o = f.add(*o, s);
        }
        Poly::from_coeffs(out)
    }

    pub fn add_assign(&self, a: &mut Poly, b: &Poly) {
        let f = &self.field;
        if a.coeffs.len() < b.coeffs.len() {
            a.coeffs.resize(b.coeffs.len(), FieldElem::ZERO);
        }
        for (o, &s) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *o = f.add(*o, s);
        }
        while a.coeffs.last().is_some_and(|c| c.is_zero()) {
            a.coeffs.pop();
        }
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly { coeffs: a.coeffs.iter().map(|&c| self.field.neg(c)).collect() }
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Poly, c: FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: a.coeffs.iter().map(|&x| self.field.mul(x, c)).collect() }
    }

    /// `a · θ^k`.
    pub fn shift(&self, a: &Poly, k: usize) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FieldElem::ZERO; k];
        coeffs.extend_from_slice(&a.coeffs);
        Poly { coeffs }
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let f = &self.field;
        let mut out = vec![FieldElem::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (o, &y) in out[i..].iter_mut().zip(&b.coeffs) {
                *o = f.add(*o, f.mul(x, y));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Product truncated to coefficients of `θ^k` with `k < len`.
    pub fn mul_trunc(&self, a: &Poly, b: &Poly, len: usize) -> Poly {
        let f = &self.field;
        let n = (a.coeffs.len() + b.coeffs.len()).saturating_sub(1).min(len);
        let mut out = vec![FieldElem::ZERO; n];
        for (i, &x) in a.coeffs.iter().enumerate().take(n) {
            if x.is_zero() {
                continue;
            }
            for (o, &y) in out[i..].iter_mut().zip(&b.coeffs) {
                *o = f.add(*o, f.mul(x, y));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn divrem(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let Some(da) = a.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if da < db {
            return Ok((Poly::zero(), a.clone()));
        }
        let lead_inv = f.inv(b.leading())?;
        let mut rem = a.coeffs.clone();
        let mut quot = vec![FieldElem::ZERO; da - db + 1];
        for top in (db..=da).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let factor = f.mul(c, lead_inv);
            quot[top - db] = factor;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                let idx = top - db + j;
                rem[idx] = f.sub(rem[idx], f.mul(factor, bj));
            }
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        self.divrem(a, b).map(|(_, r)| r)
    }

    /// Remainder modulo a monic polynomial; skips the leading-coefficient inverse.
    pub fn rem_monic(&self, a: &Poly, m: &Poly) -> Poly {
        let dm = m.degree().expect("modulus must be nonzero");
        debug_assert!(m.is_monic());
        if a.coeffs.len() <= dm {
            return a.clone();
        }
        let f = &self.field;
        let mut rem = a.coeffs.clone();
        for top in (dm..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            for (j, &mj) in m.coeffs.iter().enumerate().take(dm) {
                let idx = top - dm + j;
                rem[idx] = f.sub(rem[idx], f.mul(c, mj));
            }
            rem[top] = FieldElem::ZERO;
        }
        rem.truncate(dm);
        Poly::from_coeffs(rem)
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        let inv = self.field.inv(a.leading()).expect("nonzero leading coefficient");
        self.scale(a, inv)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s a + t b = g = gcd(a, b)` monic.
    pub fn ext_gcd(&self, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = self.field.inv(r0.leading()).expect("nonzero");
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn pow(&self, a: &Poly, mut k: u64) -> Poly {
        let mut result = Poly::one();
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

    pub fn pow_mod(&self, a: &Poly, mut k: u64, m: &Poly) -> Result<Poly> {
        let mut result = self.rem(&Poly::one(), m)?;
        let mut base = self.rem(a, m)?;
        while k > 0 {
            if k & 1 == 1 {
                result = self.rem(&self.mul(&result, &base), m)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.rem(&self.mul(&base, &base), m)?;
            }
        }
        Ok(result)
    }

    pub fn eval(&self, a: &Poly, x: FieldElem) -> FieldElem {
        let f = &self.field;
        a.coeffs.iter().rev().fold(FieldElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| f.mul(c, f.from_int(k as i64)))
                .collect(),
        )
    }

    /// `a(θ^{Q^k})` where `Q` is the field order; equals `a^{Q^k}` because
    /// Frobenius fixes the coefficients.
    pub fn frobenius(&self, a: &Poly, k: u32) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        let stride = (self.field.order() as usize).pow(k);
        let mut coeffs = vec![FieldElem::ZERO; (a.coeffs.len() - 1) * stride + 1];
        for (i, &c) in a.coeffs.iter().enumerate() {
            coeffs[i * stride] = c;
        }
        Poly { coeffs }
    }

    /// Distinct-degree test: `f` of degree `n` is irreducible iff
    /// `gcd(f, θ^{Q^k} - θ) = 1` for every `k ≤ n/2`.
    pub fn is_irreducible(&self, f: &Poly) -> bool {
        let Some(n) = f.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let q = self.field.order() as u64;
        let theta = Poly::theta();
        let mut h = self.rem(&theta, f).expect("nonzero");
        for _ in 0..n / 2 {
            h = self.pow_mod(&h, q, f).expect("nonzero");
            let g = self.gcd(f, &self.sub(&h, &theta));
            if !g.is_one() {
                return false;
            }
        }
        true
    }

    /// The `Q^n` monic polynomials of degree `n`, in canonical order
    /// (the constant coefficient varies fastest).
    pub fn enumerate_monic(&self, n: usize) -> MonicIter {
        MonicIter { q: self.field.order(), digits: vec![0; n], done: false }
    }

    /// Monic irreducibles of degree exactly `n`, in canonical order.
    pub fn monic_irreducibles_of_degree(&self, n: usize) -> Vec<Poly> {
        let all: Vec<Poly> = self.enumerate_monic(n).collect();
        all.into_par_iter().filter(|f| self.is_irreducible(f)).collect()
    }

    /// All monic irreducibles of degree `1..=max_deg`, sorted by degree then
    /// coefficients.
    pub fn monic_irreducibles(&self, max_deg: usize) -> Vec<Poly> {
        (1..=max_deg).flat_map(|n| self.monic_irreducibles_of_degree(n)).collect()
    }

    pub fn display(&self, a: &Poly) -> String {
        display_poly(a, "θ")
    }
}

pub(crate) fn display_poly(a: &Poly, var: &str) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (k, c) in a.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        terms.push(match (k, c.0) {
            (0, v) => v.to_string(),
            (_, 1) => mono,
            (_, v) => format!("{v}{mono}"),
        });
    }
    terms.join(" + ")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&display_poly(self, "θ"))
    }
}

/// Iterator over monic polynomials of a fixed degree.
pub struct MonicIter {
    q: u32,
    digits: Vec<u32>,
    done: bool,
}

impl Iterator for MonicIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.done {
            return None;
        }
        let mut coeffs: Vec<FieldElem> = self.digits.iter().map(|&d| FieldElem(d)).collect();
        coeffs.push(FieldElem::ONE);
        let out = Poly { coeffs };
        let mut carry = true;
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d == self.q {
                *d = 0;
            } else {
                carry = false;
                break;
            }
        }
        if carry {
            self.done = true;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;

    fn a3() -> PolyRing {
        PolyRing::new(FieldSpec::prime(3).build().unwrap())
    }

    #[test]
    fn product_over_f3() {
        let r = a3();
        let a = r.from_ints(&[1, 1]).unwrap();
        let b = r.from_ints(&[2, 1]).unwrap();
        // (θ+1)(θ+2) = θ² + 3θ + 2 = θ² + 2
        assert_eq!(r.mul(&a, &b), r.from_ints(&[2, 0, 1]).unwrap());
        assert_eq!(r.mul(&a, &Poly::one()), a);
    }

    #[test]
    fn gcd_is_monic_one() {
        let r = a3();
        let a = r.from_ints(&[1, 0, 1]).unwrap();
        assert!(r.gcd(&a, &Poly::theta()).is_one());
    }

    #[test]
    fn divide_by_zero() {
        let r = a3();
        assert_eq!(r.divrem(&Poly::one(), &Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn irreducibility_examples() {
        let r = a3();
        assert!(r.is_irreducible(&Poly::theta()));
        assert!(r.is_irreducible(&r.from_ints(&[1, 0, 1]).unwrap()));
        assert!(!r.is_irreducible(&r.from_ints(&[2, 0, 1]).unwrap()));
        assert!(!r.is_irreducible(&Poly::one()));
    }

    #[test]
    fn enumeration_counts_and_order() {
        let r = a3();
        assert_eq!(r.enumerate_monic(0).collect::<Vec<_>>(), vec![Poly::one()]);
        let lin: Vec<_> = r.enumerate_monic(1).collect();
        assert_eq!(
            lin,
            vec![r.from_ints(&[0, 1]).unwrap(), r.from_ints(&[1, 1]).unwrap(), r.from_ints(&[2, 1]).unwrap()]
        );
        assert_eq!(r.enumerate_monic(2).count(), 9);
        let all: Vec<_> = r.enumerate_monic(3).collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(r.monic_irreducibles(1), lin);
        assert_eq!(r.monic_irreducibles_of_degree(2).len(), 3);
        assert_eq!(r.monic_irreducibles_of_degree(3).len(), 8);
    }

    #[test]
    fn ext_gcd_identity() {
        let r = a3();
        let a = r.from_ints(&[1, 2, 0, 1]).unwrap();
        let b = r.from_ints(&[2, 1, 1]).unwrap();
        let (g, s, t) = r.ext_gcd(&a, &b);
        assert_eq!(r.add(&r.mul(&s, &a), &r.mul(&t, &b)), g);
        assert_eq!(g, r.gcd(&a, &b));
    }

    #[test]
    fn frobenius_is_qth_power() {
        let r = a3();
        let a = r.from_ints(&[2, 1, 1]).unwrap();
        assert_eq!(r.frobenius(&a, 1), r.pow(&a, 3));
        assert_eq!(r.frobenius(&a, 2), r.pow(&a, 9));
    }
}
