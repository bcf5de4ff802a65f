//! A validated `(F_q, 𝔭)` configuration with shared caches.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::algebra::{Field, FieldElem, FieldSpec, Poly, PolyRing, PrimeData, ResidueField};
use crate::error::{Error, Result};
use crate::local::{LaurentRing, Padic, PadicElem};
use crate::stickelberger::{EulerFactor, GammaGroup};

struct Inner {
    spec: FieldSpec,
    ring: PolyRing,
    prime: PrimeData,
    residue: ResidueField,
    padic: Padic,
    laurent: LaurentRing,
    irreducibles: RwLock<BTreeMap<usize, Arc<Vec<Poly>>>>,
    gammas: RwLock<BTreeMap<u32, Arc<GammaGroup>>>,
    euler: RwLock<BTreeMap<(u32, usize), Arc<Vec<EulerFactor>>>>,
}

/// Cheap to clone; safe to share across threads.
#[derive(Clone)]
pub struct Context {
    inner: Arc<Inner>,
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Context")
            .field("spec", &self.inner.spec)
            .field("pi", &self.inner.prime.pi().to_ints())
            .finish()
    }
}

impl Context {
    /// `pi` lists the little-endian coefficients of `π` as base-`p`
    /// encodings of `F_q` elements.
    pub fn new(spec: &FieldSpec, pi: &[u64]) -> Result<Self> {
        let field = spec.build()?;
        let ring = PolyRing::new(field);
        let pi = ring.from_ints(pi)?;
        Self::with_prime(spec, ring, pi)
    }

    fn with_prime(spec: &FieldSpec, ring: PolyRing, pi: Poly) -> Result<Self> {
        let prime = PrimeData::new(&ring, pi)?;
        let residue = ResidueField::new(&ring, &prime)?;
        let padic = Padic::new(ring.clone(), prime.clone());
        let laurent = LaurentRing::new(ring.field().clone());
        Ok(Context {
            inner: Arc::new(Inner {
                spec: spec.clone(),
                ring,
                prime,
                residue,
                padic,
                laurent,
                irreducibles: RwLock::new(BTreeMap::new()),
                gammas: RwLock::new(BTreeMap::new()),
                euler: RwLock::new(BTreeMap::new()),
            }),
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.inner.spec
    }

    pub fn field(&self) -> &Field {
        self.inner.ring.field()
    }

    pub fn ring(&self) -> &PolyRing {
        &self.inner.ring
    }

    pub fn prime(&self) -> &PrimeData {
        &self.inner.prime
    }

    pub fn pi(&self) -> &Poly {
        self.inner.prime.pi()
    }

    pub fn residue(&self) -> &ResidueField {
        &self.inner.residue
    }

    pub fn padic(&self) -> &Padic {
        &self.inner.padic
    }

    pub fn laurent(&self) -> &LaurentRing {
        &self.inner.laurent
    }

    pub fn p(&self) -> u32 {
        self.field().characteristic()
    }

    pub fn q(&self) -> u64 {
        self.field().order() as u64
    }

    pub fn d(&self) -> u32 {
        self.inner.prime.degree()
    }

    /// `|F_𝔭| = q^d`.
    pub fn qd(&self) -> u64 {
        self.residue().order() as u64
    }

    /// Order of the character group of `F_𝔭^*`, i.e. `q^d - 1`.
    pub fn char_modulus(&self) -> u64 {
        self.qd() - 1
    }

    /// Monic irreducibles of degree exactly `k`, cached.
    pub fn irreducibles(&self, k: usize) -> Arc<Vec<Poly>> {
        if let Some(v) = self.inner.irreducibles.read().expect("lock").get(&k) {
            return v.clone();
        }
        let list = Arc::new(self.ring().monic_irreducibles_of_degree(k));
        self.inner.irreducibles.write().expect("lock").entry(k).or_insert(list).clone()
    }

    /// `Γ_n = U_1/U_{n+1}`, cached.
    pub fn gamma_group(&self, n: u32) -> Result<Arc<GammaGroup>> {
        if let Some(g) = self.inner.gammas.read().expect("lock").get(&n) {
            return Ok(g.clone());
        }
        let g = Arc::new(GammaGroup::new(self, n)?);
        Ok(self.inner.gammas.write().expect("lock").entry(n).or_insert(g).clone())
    }

    /// Teichmüller lift of a residue-field element to `A/𝔭^prec`; `0 ↦ 0`.
    pub fn teichmuller_lift(&self, c: FieldElem, prec: u32) -> Result<PadicElem> {
        if c.is_zero() {
            return Ok(self.padic().zero(prec));
        }
        let a = self.padic().elem(&self.residue().lift(c), prec);
        self.padic().teichmuller(&a)
    }

    /// Parse a polynomial from base-`p` coefficient encodings.
    pub fn poly(&self, ints: &[u64]) -> Result<Poly> {
        self.ring().from_ints(ints)
    }

    pub(crate) fn cached_euler(&self, n: u32, max_deg: usize) -> Option<Arc<Vec<EulerFactor>>> {
        self.inner.euler.read().expect("lock").get(&(n, max_deg)).cloned()
    }

    pub(crate) fn store_euler(
        &self,
        n: u32,
        max_deg: usize,
        v: Arc<Vec<EulerFactor>>,
    ) -> Arc<Vec<EulerFactor>> {
        self.inner.euler.write().expect("lock").entry((n, max_deg)).or_insert(v).clone()
    }

    pub(crate) fn check_level(&self, n: u32) -> Result<()> {
        if n > 64 {
            return Err(Error::TooLarge(format!("level {n}")));
        }
        Ok(())
    }
}
