//! Exact arithmetic for Carlitz cyclotomic towers: power sums, Bernoulli-Goss
//! numbers, `𝔭`-adic L-functions, Stickelberger elements mod `p`, the Sinnott
//! map, and the invariants `N_𝔭(i)` and `m_𝔭(i)`.

pub mod algebra;
pub mod error;
pub mod local;

pub use error::{Error, Result};
pub mod context;
pub mod goss;
pub mod stickelberger;

pub use context::Context;
pub mod invariants;
pub mod sinnott;
pub mod verify;
