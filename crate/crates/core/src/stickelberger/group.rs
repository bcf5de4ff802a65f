use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, FieldElem, Poly, PolyRing};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::local::Padic;

/// Largest `|Γ_n|` we are willing to tabulate.
pub const MAX_GROUP_ORDER: u64 = 1 << 20;

/// An element of `Γ_n = U_1/U_{n+1}`, i.e. a one-unit modulo `π^{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaElem {
    pub rep: Poly,
    pub level: u32,
}

/// `Γ_n`, with elements sorted by representative.
pub struct GammaGroup {
    level: u32,
    ring: PolyRing,
    padic: Padic,
    modulus: Poly,
    elems: Vec<Poly>,
    index: HashMap<Poly, u32>,
    identity: u32,
    rows: RwLock<HashMap<u32, Arc<Vec<u32>>>>,
}

impl std::fmt::Debug for GammaGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GammaGroup").field("level", &self.level).field("order", &self.elems.len()).finish()
    }
}

impl GammaGroup {
    pub fn new(ctx: &Context, n: u32) -> Result<Self> {
        ctx.check_level(n)?;
        let ring = ctx.ring().clone();
        let q = ctx.q();
        let len = (ctx.d() * n) as usize;
        let order = q
            .checked_pow(len as u32)
            .filter(|&o| o <= MAX_GROUP_ORDER)
            .ok_or_else(|| Error::TooLarge(format!("|Γ_{n}| = {q}^{len}")))?;
        let pi = ctx.pi();
        let mut elems = Vec::with_capacity(order as usize);
        for k in 0..order {
            let mut v = k;
            let coeffs = (0..len)
                .map(|_| {
                    let c = FieldElem((v % q) as u32);
                    v /= q;
                    c
                })
                .collect();
            let t = Poly::from_coeffs(coeffs);
            elems.push(ring.add(&Poly::one(), &ring.mul(pi, &t)));
        }
        elems.sort();
        let index: HashMap<Poly, u32> =
            elems.iter().enumerate().map(|(k, e)| (e.clone(), k as u32)).collect();
        let identity = index[&Poly::one()];
        Ok(GammaGroup {
            level: n,
            modulus: ctx.padic().pi_pow(n + 1),
            padic: ctx.padic().clone(),
            ring,
            elems,
            index,
            identity,
            rows: RwLock::new(HashMap::new()),
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn rep(&self, g: u32) -> &Poly {
        &self.elems[g as usize]
    }

    pub fn elem(&self, g: u32) -> GammaElem {
        GammaElem { rep: self.elems[g as usize].clone(), level: self.level }
    }

    /// Index of the class of a one-unit `a` (reduced mod `π^{n+1}` first).
    pub fn index_of(&self, a: &Poly) -> Result<u32> {
        let r = self.ring.rem_monic(a, &self.modulus);
        self.index.get(&r).copied().ok_or(Error::NotAOneUnit)
    }

    pub fn mul_index(&self, g: u32, h: u32) -> u32 {
        let prod = self.ring.mul(self.rep(g), self.rep(h));
        self.index[&self.ring.rem_monic(&prod, &self.modulus)]
    }

    pub fn inverse_index(&self, g: u32) -> u32 {
        let e = self.padic.elem(self.rep(g), self.level + 1);
        let inv = self.padic.inv(&e).expect("one-units are invertible");
        self.index[inv.rep()]
    }

    /// `h ↦ g·h` as an index table, memoized.
    pub fn row(&self, g: u32) -> Arc<Vec<u32>> {
        if let Some(r) = self.rows.read().expect("lock").get(&g) {
            return r.clone();
        }
        let row: Arc<Vec<u32>> =
            Arc::new((0..self.order() as u32).map(|h| self.mul_index(g, h)).collect());
        self.rows.write().expect("lock").entry(g).or_insert(row).clone()
    }

    /// Image of `g` under `Γ_n ↠ Γ_{n-1}`.
    pub fn project_index(&self, g: u32, lower: &GammaGroup) -> Result<u32> {
        if lower.level + 1 != self.level {
            return Err(Error::LevelMismatch { left: self.level, right: lower.level });
        }
        lower.index_of(self.rep(g))
    }
}

/// A finitely supported `Γ_n → F_𝔭`; keys are indices into the sorted `Γ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupRingElem {
    level: u32,
    terms: BTreeMap<u32, FieldElem>,
}

impl GroupRingElem {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn terms(&self) -> &BTreeMap<u32, FieldElem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// Scalar part if the support is `{1}` or empty.
    pub fn as_scalar(&self, group: &GammaGroup) -> Option<FieldElem> {
        match self.terms.len() {
            0 => Some(FieldElem::ZERO),
            1 => self.terms.get(&group.identity()).copied(),
            _ => None,
        }
    }
}

/// `F_𝔭[Γ_n]`.
#[derive(Clone, Debug)]
pub struct GroupRing {
    group: Arc<GammaGroup>,
    field: Field,
}

impl GroupRing {
    pub fn new(ctx: &Context, n: u32) -> Result<Self> {
        Ok(GroupRing { group: ctx.gamma_group(n)?, field: ctx.residue().field().clone() })
    }

    pub fn group(&self) -> &GammaGroup {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn level(&self) -> u32 {
        self.group.level()
    }

    fn check(&self, a: &GroupRingElem) -> Result<()> {
        if a.level != self.level() {
            return Err(Error::LevelMismatch { left: a.level, right: self.level() });
        }
        Ok(())
    }

    fn build(&self, terms: impl IntoIterator<Item = (u32, FieldElem)>) -> GroupRingElem {
        let mut map = BTreeMap::new();
        for (g, c) in terms {
            let e = map.entry(g).or_insert(FieldElem::ZERO);
            *e = self.field.add(*e, c);
        }
        map.retain(|_, c| !c.is_zero());
        GroupRingElem { level: self.level(), terms: map }
    }

    pub fn zero(&self) -> GroupRingElem {
        GroupRingElem { level: self.level(), terms: BTreeMap::new() }
    }

    pub fn scalar(&self, c: FieldElem) -> GroupRingElem {
        self.build([(self.group.identity(), c)])
    }

    pub fn one(&self) -> GroupRingElem {
        self.scalar(FieldElem::ONE)
    }

    pub fn basis(&self, g: u32) -> GroupRingElem {
        self.build([(g, FieldElem::ONE)])
    }

    pub fn from_gamma(&self, g: &GammaElem) -> Result<GroupRingElem> {
        if g.level != self.level() {
            return Err(Error::LevelMismatch { left: g.level, right: self.level() });
        }
        Ok(self.basis(self.group.index_of(&g.rep)?))
    }

    /// `Σ_{γ ∈ Γ_n} γ`.
    pub fn norm_element(&self) -> GroupRingElem {
        self.build((0..self.group.order() as u32).map(|g| (g, FieldElem::ONE)))
    }

    pub fn from_dense(&self, v: &[FieldElem]) -> GroupRingElem {
        self.build(v.iter().enumerate().map(|(g, &c)| (g as u32, c)))
    }

    pub fn to_dense(&self, a: &GroupRingElem) -> Vec<FieldElem> {
        let mut v = vec![FieldElem::ZERO; self.group.order()];
        for (&g, &c) in &a.terms {
            v[g as usize] = c;
        }
        v
    }

    pub fn add(&self, a: &GroupRingElem, b: &GroupRingElem) -> Result<GroupRingElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.build(a.terms.iter().chain(&b.terms).map(|(&g, &c)| (g, c))))
    }

    pub fn neg(&self, a: &GroupRingElem) -> GroupRingElem {
        GroupRingElem {
            level: a.level,
            terms: a.terms.iter().map(|(&g, &c)| (g, self.field.neg(c))).collect(),
        }
    }

    pub fn sub(&self, a: &GroupRingElem, b: &GroupRingElem) -> Result<GroupRingElem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &GroupRingElem, c: FieldElem) -> GroupRingElem {
        self.build(a.terms.iter().map(|(&g, &x)| (g, self.field.mul(x, c))))
    }

    pub fn mul(&self, a: &GroupRingElem, b: &GroupRingElem) -> Result<GroupRingElem> {
        self.check(a)?;
        self.check(b)?;
        let mut out = vec![FieldElem::ZERO; self.group.order()];
        for (&g, &x) in &a.terms {
            let row = self.group.row(g);
            for (&h, &y) in &b.terms {
                let k = row[h as usize] as usize;
                out[k] = self.field.add(out[k], self.field.mul(x, y));
            }
        }
        Ok(self.from_dense(&out))
    }

    /// Push forward along `Γ_n ↠ Γ_{n-1}`.
    pub fn project(&self, a: &GroupRingElem, lower: &GroupRing) -> Result<GroupRingElem> {
        self.check(a)?;
        let terms = a
            .terms
            .iter()
            .map(|(&g, &c)| Ok((self.group.project_index(g, &lower.group)?, c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(lower.build(terms))
    }

    /// `(γ, c)` pairs in canonical order.
    pub fn terms_with_reps(&self, a: &GroupRingElem) -> Vec<(GammaElem, FieldElem)> {
        a.terms.iter().map(|(&g, &c)| (self.group.elem(g), c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;

    fn ctx() -> Context {
        Context::new(&FieldSpec::prime(3), &[0, 1]).unwrap()
    }

    #[test]
    fn group_structure() {
        let c = ctx();
        let g1 = c.gamma_group(1).unwrap();
        assert_eq!(g1.order(), 3);
        assert_eq!(g1.rep(g1.identity()), &Poly::one());
        let g2 = c.gamma_group(2).unwrap();
        assert_eq!(g2.order(), 9);
        for g in 0..9 {
            assert_eq!(g2.mul_index(g, g2.inverse_index(g)), g2.identity());
        }
        assert_eq!(c.gamma_group(0).unwrap().order(), 1);
    }

    #[test]
    fn norm_element_absorbs() {
        let c = ctx();
        let r = GroupRing::new(&c, 1).unwrap();
        let nrm = r.norm_element();
        for g in 0..3 {
            let b = r.basis(g);
            assert_eq!(r.mul(&nrm, &b).unwrap(), nrm);
            let aug = r.sub(&b, &r.one()).unwrap();
            assert!(r.mul(&aug, &nrm).unwrap().is_zero());
        }
        assert_eq!(r.mul(&nrm, &r.one()).unwrap(), nrm);
        let r2 = GroupRing::new(&c, 2).unwrap();
        assert!(matches!(r.add(&nrm, &r2.one()), Err(Error::LevelMismatch { .. })));
    }

    #[test]
    fn projection_is_a_ring_map() {
        let c = ctx();
        let (hi, lo) = (GroupRing::new(&c, 2).unwrap(), GroupRing::new(&c, 1).unwrap());
        let a = hi.from_dense(&(0..9).map(|k| FieldElem(k % 3)).collect::<Vec<_>>());
        let b = hi.add(&hi.basis(4), &hi.scale(&hi.basis(7), FieldElem(2))).unwrap();
        let lhs = hi.project(&hi.mul(&a, &b).unwrap(), &lo).unwrap();
        let rhs = lo.mul(&hi.project(&a, &lo).unwrap(), &hi.project(&b, &lo).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
