//! Truncated local arithmetic: `A/𝔭^M`, `F_q((1/θ))`, and `Z_p` exponents.

pub mod laurent;
pub mod padic;
pub mod zp;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use laurent::{sgn_and_one_unit_infty, LaurentElem, LaurentRing};
pub use padic::{Padic, PadicElem};
pub use zp::{digits_for_precision, ZpApprox};

/// Result of a valuation query on a truncated value.
///
/// `AtLeast(M)` is reported for a zero representative known only to
/// precision `M`; it is never collapsed into a number.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Valuation {
    Finite(i64),
    AtLeast(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// True when the valuation is certainly at least `k`.
    pub fn is_at_least(self, k: i64) -> bool {
        match self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => v >= k,
            Valuation::Infinite => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}
