//! Truncated Laurent series in `t = 1/θ`, i.e. elements of `F_∞ = F_q((1/θ))`.

use serde::{Deserialize, Serialize};

use super::zp::ZpApprox;
use super::Valuation;
use crate::algebra::{Field, FieldElem, Poly};
use crate::error::{Error, Result};

/// `Σ_k coeffs[k] · t^{val + k}`, known modulo `t^{abs_prec}`.
///
/// `abs_prec = None` marks an exact value; an exact value with no
/// coefficients is the exact zero. A value with no coefficients and a finite
/// `abs_prec` is only known to have valuation `≥ abs_prec`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentElem {
    val: i64,
    coeffs: Vec<FieldElem>,
    abs_prec: Option<i64>,
}

impl LaurentElem {
    fn normalized(mut val: i64, mut coeffs: Vec<FieldElem>, abs_prec: Option<i64>) -> Self {
        if let Some(ap) = abs_prec {
            let keep = (ap - val).max(0) as usize;
            coeffs.truncate(keep);
        }
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => LaurentElem { val: abs_prec.unwrap_or(0), coeffs: Vec::new(), abs_prec },
            Some(k) => {
                coeffs.drain(..k);
                val += k as i64;
                while coeffs.last().is_some_and(|c| c.is_zero()) {
                    coeffs.pop();
                }
                LaurentElem { val, coeffs, abs_prec }
            }
        }
    }

    pub fn exact_zero() -> Self {
        LaurentElem { val: 0, coeffs: Vec::new(), abs_prec: None }
    }

    pub fn one() -> Self {
        LaurentElem { val: 0, coeffs: vec![FieldElem::ONE], abs_prec: None }
    }

    /// `c · t^k`, exact.
    pub fn monomial(c: FieldElem, k: i64) -> Self {
        Self::normalized(k, vec![c], None)
    }

    /// `θ^k = t^{-k}`, exact.
    pub fn theta_pow(k: i64) -> Self {
        Self::monomial(FieldElem::ONE, -k)
    }

    /// Embedding of `A` into `F_∞`.
    pub fn from_poly(a: &Poly) -> Self {
        match a.degree() {
            None => Self::exact_zero(),
            Some(n) => {
                let coeffs: Vec<FieldElem> = a.coeffs().iter().rev().copied().collect();
                Self::normalized(-(n as i64), coeffs, None)
            }
        }
    }

    /// Build from raw coefficients of `t^{val}, t^{val+1}, …`.
    pub fn from_coeffs(val: i64, coeffs: Vec<FieldElem>, abs_prec: Option<i64>) -> Self {
        Self::normalized(val, coeffs, abs_prec)
    }

    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn abs_prec(&self) -> Option<i64> {
        self.abs_prec
    }

    pub fn is_exact(&self) -> bool {
        self.abs_prec.is_none()
    }

    /// Zero as far as is known.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^k`; `None` when it lies beyond the known precision.
    pub fn coeff(&self, k: i64) -> Option<FieldElem> {
        if self.abs_prec.is_some_and(|ap| k >= ap) {
            return None;
        }
        if k < self.val {
            return Some(FieldElem::ZERO);
        }
        Some(self.coeffs.get((k - self.val) as usize).copied().unwrap_or(FieldElem::ZERO))
    }

    /// `v_∞`, i.e. the order in `t`.
    pub fn valuation(&self) -> Valuation {
        match (self.coeffs.is_empty(), self.abs_prec) {
            (false, _) => Valuation::Finite(self.val),
            (true, Some(ap)) => Valuation::AtLeast(ap),
            (true, None) => Valuation::Infinite,
        }
    }

    /// Forget everything from `t^{abs}` on.
    pub fn truncate(&self, abs: i64) -> Self {
        let ap = self.abs_prec.map_or(abs, |p| p.min(abs));
        Self::normalized(self.val, self.coeffs.clone(), Some(ap))
    }

    pub fn is_one_unit(&self) -> bool {
        self.val == 0 && self.coeffs.first() == Some(&FieldElem::ONE)
    }
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Arithmetic context for [`LaurentElem`] over a fixed `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentRing {
    field: Field,
}

impl LaurentRing {
    pub fn new(field: Field) -> Self {
        LaurentRing { field }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn add(&self, a: &LaurentElem, b: &LaurentElem) -> LaurentElem {
        let ap = min_prec(a.abs_prec, b.abs_prec);
        let lo = match (a.is_zero(), b.is_zero()) {
            (true, true) => return LaurentElem::normalized(0, Vec::new(), ap),
            (true, false) => b.val.min(a.val),
            (false, true) => a.val.min(b.val),
            (false, false) => a.val.min(b.val),
        };
        let hi_a = a.val + a.coeffs.len() as i64;
        let hi_b = b.val + b.coeffs.len() as i64;
        let mut hi = hi_a.max(hi_b);
        if let Some(p) = ap {
            hi = hi.min(p);
        }
        if hi <= lo {
            return LaurentElem::normalized(lo, Vec::new(), ap);
        }
        let mut out = vec![FieldElem::ZERO; (hi - lo) as usize];
        for (src, v) in [(a, a.val), (b, b.val)] {
            for (k, &c) in src.coeffs.iter().enumerate() {
                let idx = v + k as i64 - lo;
                if idx >= 0 && (idx as usize) < out.len() {
                    out[idx as usize] = self.field.add(out[idx as usize], c);
                }
            }
        }
        LaurentElem::normalized(lo, out, ap)
    }

    pub fn neg(&self, a: &LaurentElem) -> LaurentElem {
        LaurentElem {
            val: a.val,
            coeffs: a.coeffs.iter().map(|&c| self.field.neg(c)).collect(),
            abs_prec: a.abs_prec,
        }
    }

    pub fn sub(&self, a: &LaurentElem, b: &LaurentElem) -> LaurentElem {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &LaurentElem, c: FieldElem) -> LaurentElem {
        let coeffs = a.coeffs.iter().map(|&x| self.field.mul(x, c)).collect();
        LaurentElem::normalized(a.val, coeffs, a.abs_prec)
    }

    /// Multiply by `t^k` (exact shift).
    pub fn shift(&self, a: &LaurentElem, k: i64) -> LaurentElem {
        LaurentElem {
            val: a.val + k,
            coeffs: a.coeffs.clone(),
            abs_prec: a.abs_prec.map(|p| p + k),
        }
    }

    pub fn mul(&self, a: &LaurentElem, b: &LaurentElem) -> LaurentElem {
        let ap = min_prec(a.abs_prec.map(|p| p + b.val), b.abs_prec.map(|p| p + a.val));
        let ap = match (a.is_zero() && a.is_exact(), b.is_zero() && b.is_exact()) {
            (true, _) | (_, true) => return LaurentElem::exact_zero(),
            _ => ap,
        };
        let val = a.val + b.val;
        let mut len = a.coeffs.len() + b.coeffs.len();
        if let Some(p) = ap {
            len = len.min((p - val).max(0) as usize);
        }
        let mut out = vec![FieldElem::ZERO; len];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if i >= len || x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = self.field.add(out[i + j], self.field.mul(x, y));
            }
        }
        LaurentElem::normalized(val, out, ap)
    }

    /// Inverse of a nonzero element. An inexact input keeps its relative
    /// precision; an exact input is expanded to `rel_prec` coefficients.
    pub fn inv(&self, a: &LaurentElem, rel_prec: i64) -> Result<LaurentElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let rel = match a.abs_prec {
            Some(p) => p - a.val,
            None => rel_prec,
        };
        let n = rel.max(0) as usize;
        let f = &self.field;
        let c0_inv = f.inv(a.coeffs[0])?;
        let mut out = vec![FieldElem::ZERO; n];
        for k in 0..n {
            // out[k] = -c0^{-1} Σ_{i=1..k} a_i out[k-i], with out[0] = c0^{-1}
            let mut s = if k == 0 { FieldElem::ONE } else { FieldElem::ZERO };
            for i in 1..=k.min(a.coeffs.len().saturating_sub(1)) {
                s = f.sub(s, f.mul(a.coeffs[i], out[k - i]));
            }
            out[k] = f.mul(s, c0_inv);
        }
        Ok(LaurentElem::normalized(-a.val, out, Some(-a.val + rel)))
    }

    pub fn pow_int(&self, a: &LaurentElem, mut k: u64) -> LaurentElem {
        let mut result = LaurentElem::one();
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

    /// `u^y` for a one-unit `u`; precision `min(abs_prec(u), p^m)`.
    pub fn pow_zp(&self, u: &LaurentElem, y: &ZpApprox) -> Result<LaurentElem> {
        if !u.is_one_unit() {
            return Err(Error::NotAOneUnit);
        }
        if *u == LaurentElem::one() {
            return Ok(LaurentElem::one());
        }
        let cap = i64::try_from(y.modulus()).unwrap_or(i64::MAX);
        let prec = u.abs_prec.map_or(cap, |p| p.min(cap));
        Ok(self.pow_int(&u.truncate(prec), y.value()).truncate(prec))
    }

    /// Exact embedding of a polynomial.
    pub fn from_poly(&self, a: &Poly) -> LaurentElem {
        LaurentElem::from_poly(a)
    }
}

/// `(sgn(a), ⟨a⟩_∞)` with `a = sgn(a) · θ^{deg a} · ⟨a⟩_∞`; both exact.
pub fn sgn_and_one_unit_infty(field: &Field, a: &Poly) -> Result<(FieldElem, LaurentElem)> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let sgn = a.leading();
    let sgn_inv = field.inv(sgn)?;
    let coeffs = a.coeffs().iter().rev().map(|&c| field.mul(c, sgn_inv)).collect();
    Ok((sgn, LaurentElem::from_coeffs(0, coeffs, None)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, PolyRing};

    fn ring3() -> (PolyRing, LaurentRing) {
        let f = FieldSpec::prime(3).build().unwrap();
        (PolyRing::new(f.clone()), LaurentRing::new(f))
    }

    #[test]
    fn sign_and_one_unit() {
        let (r, l) = ring3();
        let a = r.from_ints(&[1, 2]).unwrap();
        let (s, u) = sgn_and_one_unit_infty(l.field(), &a).unwrap();
        assert_eq!(s, FieldElem(2));
        assert_eq!(u, LaurentElem::from_coeffs(0, vec![FieldElem(1), FieldElem(2)], None));
        let back = l.mul(&l.scale(&u, s), &LaurentElem::theta_pow(1));
        assert_eq!(back, LaurentElem::from_poly(&a));
        let (s, u) = sgn_and_one_unit_infty(l.field(), &Poly::theta()).unwrap();
        assert_eq!((s, u), (FieldElem::ONE, LaurentElem::one()));
        assert_eq!(sgn_and_one_unit_infty(l.field(), &Poly::zero()), Err(Error::ZeroInput));
    }

    #[test]
    fn one_unit_powers() {
        let (_, l) = ring3();
        let u = LaurentElem::from_coeffs(0, vec![FieldElem(1), FieldElem(1)], None);
        let y3 = ZpApprox::new(3, 3, 2).unwrap();
        let cube = l.pow_zp(&u, &y3).unwrap();
        assert_eq!(cube.coeff(0), Some(FieldElem(1)));
        assert_eq!(cube.coeff(3), Some(FieldElem(1)));
        assert_eq!(cube.abs_prec(), Some(9));
        let y0 = ZpApprox::new(3, 0, 1).unwrap();
        // y ≡ 0 mod 3 only: 1 + O(t^3)
        assert_eq!(l.pow_zp(&u, &y0).unwrap(), LaurentElem::one().truncate(3));
        // y ≡ 2 mod 3, two coefficients known: 1 + 2t
        let y2 = ZpApprox::new(3, 2, 1).unwrap();
        let v = l.pow_zp(&u.truncate(2), &y2).unwrap();
        assert_eq!(v, LaurentElem::from_coeffs(0, vec![FieldElem(1), FieldElem(2)], Some(2)));
    }

    #[test]
    fn inverse_and_precision() {
        let (_, l) = ring3();
        let u = LaurentElem::from_coeffs(-1, vec![FieldElem(1), FieldElem(1)], None);
        let inv = l.inv(&u, 6).unwrap();
        assert_eq!(inv.val(), 1);
        assert_eq!(inv.abs_prec(), Some(7));
        let prod = l.mul(&u, &inv);
        assert_eq!(prod, LaurentElem::one().truncate(6));
        let z = LaurentElem::from_coeffs(0, vec![], Some(5));
        assert_eq!(z.valuation(), Valuation::AtLeast(5));
        assert_eq!(LaurentElem::exact_zero().valuation(), Valuation::Infinite);
        assert_eq!(l.sub(&u, &u), LaurentElem::exact_zero());
    }
}
