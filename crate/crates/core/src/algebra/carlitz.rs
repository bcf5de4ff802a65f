//! The Carlitz module `Φ: A → A{τ}`, `Φ_θ = θ + τ`, with `τ f = f^q τ`.

use serde::{Deserialize, Serialize};

use super::poly::{Poly, PolyRing};

/// The additive polynomial `Φ_a(x) = Σ_k c_k x^{q^k}`; `tau_coeffs[k] = c_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarlitzPoly {
    pub tau_coeffs: Vec<Poly>,
}

impl CarlitzPoly {
    pub fn identity() -> Self {
        CarlitzPoly { tau_coeffs: vec![Poly::one()] }
    }

    fn trimmed(mut tau_coeffs: Vec<Poly>) -> Self {
        while tau_coeffs.last().is_some_and(|c| c.is_zero()) {
            tau_coeffs.pop();
        }
        CarlitzPoly { tau_coeffs }
    }

    pub fn add(&self, ring: &PolyRing, other: &CarlitzPoly) -> CarlitzPoly {
        let n = self.tau_coeffs.len().max(other.tau_coeffs.len());
        let zero = Poly::zero();
        CarlitzPoly::trimmed(
            (0..n)
                .map(|k| {
                    ring.add(
                        self.tau_coeffs.get(k).unwrap_or(&zero),
                        other.tau_coeffs.get(k).unwrap_or(&zero),
                    )
                })
                .collect(),
        )
    }

    /// `self ∘ other` in `A{τ}`: `(Σ a_k τ^k)(Σ b_l τ^l) = Σ a_k b_l^{q^k} τ^{k+l}`.
    pub fn compose(&self, ring: &PolyRing, other: &CarlitzPoly) -> CarlitzPoly {
        if self.tau_coeffs.is_empty() || other.tau_coeffs.is_empty() {
            return CarlitzPoly { tau_coeffs: Vec::new() };
        }
        let mut out = vec![Poly::zero(); self.tau_coeffs.len() + other.tau_coeffs.len() - 1];
        for (k, a) in self.tau_coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (l, b) in other.tau_coeffs.iter().enumerate() {
                let term = ring.mul(a, &ring.frobenius(b, k as u32));
                ring.add_assign(&mut out[k + l], &term);
            }
        }
        CarlitzPoly::trimmed(out)
    }

    /// `Φ_a(x)` for `x ∈ A`.
    pub fn eval(&self, ring: &PolyRing, x: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for (k, c) in self.tau_coeffs.iter().enumerate() {
            ring.add_assign(&mut acc, &ring.mul(c, &ring.frobenius(x, k as u32)));
        }
        acc
    }

    /// Coefficientwise reduction modulo `m`.
    pub fn reduce(&self, ring: &PolyRing, m: &Poly) -> CarlitzPoly {
        CarlitzPoly::trimmed(self.tau_coeffs.iter().map(|c| ring.rem(c, m).expect("nonzero modulus")).collect())
    }
}

/// `Φ_a`, built from `Φ_θ` by `F_q`-linearity: `Φ_a = Σ a_i Φ_θ^{∘ i}`.
pub fn carlitz_action(ring: &PolyRing, a: &Poly) -> CarlitzPoly {
    let phi_theta = CarlitzPoly { tau_coeffs: vec![Poly::theta(), Poly::one()] };
    let mut power = CarlitzPoly::identity();
    let mut acc = CarlitzPoly { tau_coeffs: Vec::new() };
    for (i, &c) in a.coeffs().iter().enumerate() {
        if i > 0 {
            power = phi_theta.compose(ring, &power);
        }
        if !c.is_zero() {
            let scaled = CarlitzPoly { tau_coeffs: power.tau_coeffs.iter().map(|t| ring.scale(t, c)).collect() };
            acc = acc.add(ring, &scaled);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;

    fn a3() -> PolyRing {
        PolyRing::new(FieldSpec::prime(3).build().unwrap())
    }

    #[test]
    fn phi_theta_and_phi_one() {
        let r = a3();
        let phi = carlitz_action(&r, &Poly::theta());
        assert_eq!(phi.tau_coeffs, vec![Poly::theta(), Poly::one()]);
        assert_eq!(carlitz_action(&r, &Poly::one()), CarlitzPoly::identity());
    }

    #[test]
    fn phi_theta_squared() {
        let r = a3();
        let phi = carlitz_action(&r, &r.from_ints(&[0, 0, 1]).unwrap());
        assert_eq!(
            phi.tau_coeffs,
            vec![
                r.from_ints(&[0, 0, 1]).unwrap(),
                r.from_ints(&[0, 1, 0, 1]).unwrap(),
                Poly::one()
            ]
        );
    }

    #[test]
    fn additive_evaluation() {
        let r = a3();
        let phi = carlitz_action(&r, &r.from_ints(&[1, 2, 1]).unwrap());
        let x = r.from_ints(&[2, 1]).unwrap();
        let y = r.from_ints(&[0, 1, 1]).unwrap();
        assert_eq!(
            phi.eval(&r, &r.add(&x, &y)),
            r.add(&phi.eval(&r, &x), &phi.eval(&r, &y))
        );
    }
}
