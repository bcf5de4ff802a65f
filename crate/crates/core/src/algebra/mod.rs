//! Exact arithmetic in `F_q`, `A = F_q[θ]`, `A/𝔭`, and the Carlitz module.

pub mod carlitz;
pub mod field;
pub mod poly;
pub mod prime;

pub use carlitz::{carlitz_action, CarlitzPoly};
pub use field::{Field, FieldElem, FieldSpec};
pub use poly::{MonicIter, Poly, PolyRing};
pub use prime::{PrimeData, ResidueField};
