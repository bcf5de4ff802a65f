//! Table-driven finite fields.
//!
//! Every field is built as a tower over its prime field and every element is
//! stored as a single integer: the base-`p` encoding of its coordinate vector
//! over `F_p`. For an extension `B[x]/(f)` the element `Σ b_k x^k` is encoded
//! as `Σ enc(b_k) |B|^k`, so addition is always digitwise mod `p` and the
//! encoding doubles as the serialization format.
//!
//! Multiplication goes through discrete log / antilog tables built once per
//! field, which keeps the inner loops of power sums and Euler products cheap.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the field order; tables are `O(order)` words.
pub const MAX_FIELD_ORDER: u32 = 1 << 20;

const ADD_TABLE_LIMIT: u32 = 1024;

/// An element of some [`Field`], as its base-`p` coordinate encoding.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// User-facing description of `F_q`: `q = p^e`, with a monic irreducible
/// modulus over `F_p` of degree `e` (ignored when `e = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    #[serde(default)]
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec { p, e: 1, modulus: Vec::new() }
    }

    pub fn new(p: u32, e: u32, modulus: Vec<u32>) -> Self {
        FieldSpec { p, e, modulus }
    }

    /// `F_9 = F_3[x]/(x^2 + 1)`, the default documented in the README.
    pub fn f9() -> Self {
        FieldSpec { p: 3, e: 2, modulus: vec![1, 0, 1] }
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.e)
    }

    pub fn build(&self) -> Result<Field> {
        if !is_prime(self.p) {
            return Err(Error::InvalidField(format!("p = {} is not prime", self.p)));
        }
        if self.e == 0 {
            return Err(Error::InvalidField("extension degree e must be >= 1".into()));
        }
        if self.q() < 3 {
            return Err(Error::InvalidField("q = p^e must be at least 3".into()));
        }
        let fp = Field::prime(self.p)?;
        if self.e == 1 {
            return Ok(fp);
        }
        if self.modulus.len() != self.e as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus must have e + 1 = {} coefficients, got {}",
                self.e + 1,
                self.modulus.len()
            )));
        }
        let coeffs = self
            .modulus
            .iter()
            .map(|&c| fp.elem(c as u64))
            .collect::<Result<Vec<_>>>()?;
        Field::extension(&fp, &coeffs)
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u32;
    while (k as u64) * (k as u64) <= n as u64 {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

struct Inner {
    p: u32,
    /// Dimension over `F_p`.
    digits: u32,
    order: u32,
    /// `exp[k] = g^k` for `k < 2(order - 1)`.
    exp: Vec<u32>,
    /// `log[x]` for `x != 0`.
    log: Vec<u32>,
    add: Option<Vec<u32>>,
    neg: Vec<u32>,
    /// Order of the field this one was built over (`p` for prime fields).
    base_order: u32,
    /// Moduli of the tower, bottom first; identifies the field up to equality.
    definition: Vec<Vec<u32>>,
}

/// A finite field. Cheap to clone; all clones share the tables.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.order == other.inner.order
                && self.inner.definition == other.inner.definition)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.inner.p)
            .field("order", &self.inner.order)
            .field("definition", &self.inner.definition)
            .finish()
    }
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p > MAX_FIELD_ORDER {
            return Err(Error::TooLarge(format!("prime field of order {p}")));
        }
        let g = (1..p)
            .find(|&g| {
                let mut x = 1u64;
                for k in 1..p {
                    x = x * g as u64 % p as u64;
                    if x == 1 {
                        return k == p - 1;
                    }
                }
                false
            })
            .unwrap_or(1);
        let mul = |a: u32, b: u32| (a as u64 * b as u64 % p as u64) as u32;
        let (exp, log) = build_log_tables(p, g, mul);
        let neg = (0..p).map(|x| (p - x) % p).collect();
        Ok(Field {
            inner: Arc::new(Inner {
                p,
                digits: 1,
                order: p,
                exp,
                log,
                add: None,
                neg,
                base_order: p,
                definition: Vec::new(),
            }),
        })
    }

    /// `base[x]/(modulus)`; the modulus must be monic and irreducible over `base`.
    pub fn extension(base: &Field, modulus: &[FieldElem]) -> Result<Field> {
        let k = modulus.len().saturating_sub(1);
        if k == 0 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        if modulus[k] != FieldElem::ONE {
            return Err(Error::NotMonic);
        }
        let order64 = (base.order() as u64).pow(k as u32);
        if order64 > MAX_FIELD_ORDER as u64 {
            return Err(Error::TooLarge(format!("field of order {order64}")));
        }
        let ring = super::poly::PolyRing::new(base.clone());
        let f = super::poly::Poly::from_coeffs(modulus.to_vec());
        if !ring.is_irreducible(&f) {
            return Err(Error::NotIrreducible(format!("{:?}", f.coeffs())));
        }
        let order = order64 as u32;
        let bq = base.order();
        let decode = |x: u32| -> Vec<FieldElem> {
            let mut v = Vec::with_capacity(k);
            let mut x = x;
            for _ in 0..k {
                v.push(FieldElem(x % bq));
                x /= bq;
            }
            v
        };
        let encode = |v: &[FieldElem]| -> u32 { v.iter().rev().fold(0u32, |acc, c| acc * bq + c.0) };
        let mulmod = |a: &[FieldElem], b: &[FieldElem]| -> Vec<FieldElem> {
            let mut prod = vec![FieldElem::ZERO; 2 * k - 1];
            for (i, &ai) in a.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                for (j, &bj) in b.iter().enumerate() {
                    prod[i + j] = base.add(prod[i + j], base.mul(ai, bj));
                }
            }
            for top in (k..prod.len()).rev() {
                let c = prod[top];
                if c.is_zero() {
                    continue;
                }
                for (j, &m) in modulus.iter().enumerate().take(k) {
                    let idx = top - k + j;
                    prod[idx] = base.sub(prod[idx], base.mul(c, m));
                }
                prod[top] = FieldElem::ZERO;
            }
            prod.truncate(k);
            prod
        };
        let mul = |a: u32, b: u32| encode(&mulmod(&decode(a), &decode(b)));
        let g = (2..order.max(3))
            .chain(std::iter::once(1))
            .find(|&g| {
                let mut x = 1u32;
                for step in 1..order {
                    x = mul(x, g);
                    if x == 1 {
                        return step == order - 1;
                    }
                }
                false
            })
            .ok_or_else(|| Error::InvalidField("no primitive element found".into()))?;
        let (exp, log) = build_log_tables(order, g, mul);
        let p = base.characteristic();
        let digits = base.digits() * k as u32;
        let neg = (0..order).map(|x| digitwise_neg(x, p, digits)).collect();
        let add = (order <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    t[(a * order + b) as usize] = digitwise_add(a, b, p, digits);
                }
            }
            t
        });
        let mut definition = base.inner.definition.clone();
        definition.push(modulus.iter().map(|c| c.0).collect());
        Ok(Field {
            inner: Arc::new(Inner {
                p,
                digits,
                order,
                exp,
                log,
                add,
                neg,
                base_order: bq,
                definition,
            }),
        })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.inner.order
    }

    /// Dimension over the prime field.
    #[inline]
    pub fn digits(&self) -> u32 {
        self.inner.digits
    }

    /// Order of the field this one was built over (`p` for a prime field).
    pub fn base_order(&self) -> u32 {
        self.inner.base_order
    }

    pub fn elem(&self, value: u64) -> Result<FieldElem> {
        if value >= self.order() as u64 {
            return Err(Error::CoefficientOutOfRange { value, order: self.order() });
        }
        Ok(FieldElem(value as u32))
    }

    /// Image of an integer under `Z -> F_p -> F`.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.inner.p as i64) as u32)
    }

    /// Elements in canonical (encoding) order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.order()).map(FieldElem)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let inner = &*self.inner;
        if inner.digits == 1 {
            let s = a.0 + b.0;
            return FieldElem(if s >= inner.p { s - inner.p } else { s });
        }
        match &inner.add {
            Some(t) => FieldElem(t[(a.0 * inner.order + b.0) as usize]),
            None => FieldElem(digitwise_add(a.0, b.0, inner.p, inner.digits)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.inner.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let inner = &*self.inner;
        FieldElem(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inner = &*self.inner;
        let l = inner.log[a.0 as usize];
        Ok(FieldElem(inner.exp[((inner.order - 1 - l) % (inner.order - 1)) as usize]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k` for any integer `k` (negative exponents need `a != 0`).
    pub fn pow(&self, a: FieldElem, k: i64) -> Result<FieldElem> {
        if a.is_zero() {
            return match k {
                0 => Ok(FieldElem::ONE),
                k if k > 0 => Ok(FieldElem::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let inner = &*self.inner;
        let m = (inner.order - 1) as i64;
        let l = (inner.log[a.0 as usize] as i64 * k.rem_euclid(m)).rem_euclid(m);
        Ok(FieldElem(inner.exp[l as usize]))
    }

    /// Coordinates over `F_p` (little-endian base-`p` digits).
    pub fn coords(&self, a: FieldElem) -> Vec<u32> {
        digits_of(a.0, self.inner.p, self.inner.digits)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElem> {
        if coords.len() != self.inner.digits as usize || coords.iter().any(|&c| c >= self.inner.p) {
            return Err(Error::InvalidField(format!("bad coordinate vector {coords:?}")));
        }
        Ok(FieldElem(coords.iter().rev().fold(0, |acc, &c| acc * self.inner.p + c)))
    }
}

fn build_log_tables(order: u32, g: u32, mul: impl Fn(u32, u32) -> u32) -> (Vec<u32>, Vec<u32>) {
    let n = (order - 1) as usize;
    let mut exp = vec![0u32; 2 * n.max(1)];
    let mut log = vec![0u32; order as usize];
    let mut x = 1u32;
    for k in 0..n {
        exp[k] = x;
        log[x as usize] = k as u32;
        x = mul(x, g);
    }
    for k in n..2 * n {
        exp[k] = exp[k - n];
    }
    (exp, log)
}

fn digits_of(mut x: u32, p: u32, digits: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(digits as usize);
    for _ in 0..digits {
        v.push(x % p);
        x /= p;
    }
    v
}

fn digitwise_add(mut a: u32, mut b: u32, p: u32, digits: u32) -> u32 {
    let mut out = 0u32;
    let mut place = 1u32;
    for _ in 0..digits {
        let s = (a % p + b % p) % p;
        out += s * place;
        place = place.wrapping_mul(p);
        a /= p;
        b /= p;
    }
    out
}

fn digitwise_neg(mut a: u32, p: u32, digits: u32) -> u32 {
    let mut out = 0u32;
    let mut place = 1u32;
    for _ in 0..digits {
        out += ((p - a % p) % p) * place;
        place = place.wrapping_mul(p);
        a /= p;
    }
    out
}
