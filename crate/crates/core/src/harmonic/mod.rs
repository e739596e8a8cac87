//! Spectral side of the cap-count variance.
//!
//! The cap indicator `K_R(x, y) = 1[dist(x, y) ≤ R]` expands as
//! `Σ_m h_R(m) Σ_j φ_{j,m}(x) φ_{j,m}(y)` with `φ_{j,m}` orthonormal for the
//! surface measure (`σ(S²) = 4π`). With that normalisation the addition
//! theorem reads `Σ_j φ_{j,m}(x) φ_{j,m}(y) = (2m+1)/(4π) · P_m(⟨x, y⟩)` and
//! the variance over random rotations is
//!
//! ```text
//! V = (1/4π) Σ_{m ≥ 1} h_R(m)² S_m,   S_m = Σ_j |Σ_i φ_{j,m}(x_i)|².
//! ```

mod bessel;
pub mod explicit;
mod legendre;
pub mod quadrature;
mod spectrum;
mod transform;
mod weyl;

pub use bessel::{bessel_j0, hilb_approx, HILB_EPSILON};
pub use legendre::{legendre, legendre_eval};
pub use spectrum::{
    default_m_max, harmonic_spectrum, harmonic_variance, HarmonicSpectrum, SpectralVariance,
    MAX_M_MAX, PARSEVAL_TARGET,
};
pub use transform::{
    parseval_partial_sums, shc_transform_closed, shc_transform_quadrature, smoothed_transform,
    transform_table,
};
pub use weyl::{weyl_power_addition, weyl_power_lattice};
