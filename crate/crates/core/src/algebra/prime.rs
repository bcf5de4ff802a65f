//! The fixed prime `𝔭 = (π)` of `A` and its residue field `F_𝔭 = A/𝔭`.

use serde::{Deserialize, Serialize};

use super::field::{Field, FieldElem};
use super::poly::{Poly, PolyRing};
use crate::error::{Error, Result};

/// A monic irreducible `π ∈ A` together with its degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeData {
    pi: Poly,
    d: u32,
}

impl PrimeData {
    pub fn new(ring: &PolyRing, pi: Poly) -> Result<Self> {
        let d = pi.degree().filter(|&d| d >= 1).ok_or_else(|| {
            Error::NotIrreducible("the prime must have degree at least 1".into())
        })?;
        if !pi.is_monic() {
            return Err(Error::NotMonic);
        }
        if !ring.is_irreducible(&pi) {
            return Err(Error::NotIrreducible(ring.display(&pi)));
        }
        Ok(PrimeData { pi, d: d as u32 })
    }

    pub fn pi(&self) -> &Poly {
        &self.pi
    }

    pub fn degree(&self) -> u32 {
        self.d
    }
}

/// `F_𝔭 = F_q[θ]/(π)`, a field of order `q^d`. Its elements are encoded as the
/// base-`q` digits of their reduced representative, so `lift` and `reduce`
/// are pure re-encodings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    field: Field,
    ring: PolyRing,
    prime: PrimeData,
}

impl ResidueField {
    pub fn new(ring: &PolyRing, prime: &PrimeData) -> Result<Self> {
        let field = Field::extension(ring.field(), prime.pi().coeffs())?;
        Ok(ResidueField { field, ring: ring.clone(), prime: prime.clone() })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    /// `a mod π`.
    pub fn reduce(&self, a: &Poly) -> FieldElem {
        let r = self.ring.rem_monic(a, self.prime.pi());
        let q = self.ring.field().order();
        FieldElem(r.coeffs().iter().rev().fold(0u32, |acc, c| acc * q + c.0))
    }

    /// The representative of degree `< d`.
    pub fn lift(&self, x: FieldElem) -> Poly {
        let q = self.ring.field().order();
        let mut v = x.0;
        let mut coeffs = Vec::with_capacity(self.prime.degree() as usize);
        for _ in 0..self.prime.degree() {
            coeffs.push(FieldElem(v % q));
            v /= q;
        }
        Poly::from_coeffs(coeffs)
    }

    /// Embedding `F_q ⊂ F_𝔭` of constants.
    pub fn from_base(&self, c: FieldElem) -> FieldElem {
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;

    #[test]
    fn residue_round_trip_and_multiplication() {
        let ring = PolyRing::new(FieldSpec::prime(3).build().unwrap());
        let pi = ring.from_ints(&[1, 0, 1]).unwrap();
        let prime = PrimeData::new(&ring, pi.clone()).unwrap();
        let res = ResidueField::new(&ring, &prime).unwrap();
        assert_eq!(res.order(), 9);
        for x in res.field().elements() {
            assert_eq!(res.reduce(&res.lift(x)), x);
        }
        for x in res.field().elements() {
            for y in res.field().elements() {
                let prod = ring.rem(&ring.mul(&res.lift(x), &res.lift(y)), &pi).unwrap();
                assert_eq!(res.reduce(&prod), res.field().mul(x, y));
            }
        }
    }

    #[test]
    fn rejects_reducible_prime() {
        let ring = PolyRing::new(FieldSpec::prime(3).build().unwrap());
        let f = ring.from_ints(&[2, 0, 1]).unwrap();
        assert!(matches!(PrimeData::new(&ring, f), Err(Error::NotIrreducible(_))));
        let g = ring.from_ints(&[1, 2]).unwrap();
        assert_eq!(PrimeData::new(&ring, g), Err(Error::NotMonic));
    }
}
