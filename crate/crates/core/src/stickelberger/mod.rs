//! `Γ_n`, the group ring `F_𝔭[Γ_n]`, the Stickelberger series `Θ_n(X, χ) mod p`
//! as an Euler product, `Θ_n^#(1, χ)`, and `N_𝔭(i)`.

mod group;
mod theta;

pub use group::{GammaElem, GammaGroup, GroupRing, GroupRingElem, MAX_GROUP_ORDER};
pub(crate) use theta::EulerFactor;
pub use theta::{
    default_cutoff, euler_inverse_check, frobenius_decompose, n_invariant, theta_series,
    theta_sharp, theta_sharp_at_one, NInvariant, ThetaSeries,
};
