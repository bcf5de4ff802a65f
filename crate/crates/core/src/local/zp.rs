use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A `p`-adic integer known modulo `p^digits`: `value ∈ [0, p^digits)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZpApprox {
    p: u32,
    value: u64,
    digits: u32,
}

impl ZpApprox {
    pub fn new(p: u32, value: u64, digits: u32) -> Result<Self> {
        let modulus = checked_modulus(p, digits)?;
        if value >= modulus {
            return Err(Error::Precondition(format!("{value} is not below {p}^{digits}")));
        }
        Ok(ZpApprox { p, value, digits })
    }

    /// Reduction of an integer (possibly negative) modulo `p^digits`.
    pub fn from_int(p: u32, n: i64, digits: u32) -> Result<Self> {
        let modulus = checked_modulus(p, digits)?;
        let value = (n as i128).rem_euclid(modulus as i128) as u64;
        Ok(ZpApprox { p, value, digits })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// `p^digits`.
    pub fn modulus(&self) -> u64 {
        (self.p as u64).pow(self.digits)
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus();
        ZpApprox { value: (m - self.value) % m, ..*self }
    }

    /// Sum, known to the smaller number of digits.
    pub fn add(&self, other: &Self) -> Self {
        let digits = self.digits.min(other.digits);
        let m = (self.p as u64).pow(digits);
        ZpApprox { p: self.p, value: (self.value % m + other.value % m) % m, digits }
    }

    /// Forget digits beyond `digits`.
    pub fn truncate(&self, digits: u32) -> Self {
        let digits = digits.min(self.digits);
        ZpApprox { value: self.value % (self.p as u64).pow(digits), digits, ..*self }
    }

    /// Every class modulo `p^digits`, in increasing order.
    pub fn all_classes(p: u32, digits: u32) -> Result<impl Iterator<Item = ZpApprox>> {
        let m = checked_modulus(p, digits)?;
        Ok((0..m).map(move |value| ZpApprox { p, value, digits }))
    }
}

/// Largest digit count we accept: `p^digits` must fit comfortably in a `u64`.
pub fn checked_modulus(p: u32, digits: u32) -> Result<u64> {
    (p as u64)
        .checked_pow(digits)
        .filter(|&m| m < (1u64 << 62))
        .ok_or_else(|| Error::TooLarge(format!("{p}^{digits}")))
}

/// Least `m` with `p^m ≥ n`.
pub fn digits_for_precision(p: u32, n: u64) -> u32 {
    let mut m = 0u32;
    let mut pm = 1u64;
    while pm < n {
        pm = pm.saturating_mul(p as u64);
        m += 1;
    }
    m
}
