//! Lattice points on the sphere `x² + y² + z² = n` and the statistics of how
//! they fall into spherical caps.
//!
//! The crate is organised by capability:
//!
//! * [`lattice`] enumerates the solution set and classifies `n`.
//! * [`geometry`] holds caps, spherical distance and Haar-random rotations.
//! * [`mc`] estimates the cap-count variance over random rotations.
//! * [`harmonic`] computes the same variance spectrally from Legendre
//!   expansions of the cap indicator, plus the Hilb/Bessel approximations.
//! * [`exact`] checks the Hecke/Chebyshev coefficient identities in exact
//!   integer and rational arithmetic.
//! * [`arithmetic`] is the Kronecker character, prime sums, `L(1, χ)`
//!   partial sums and the explicit-formula weight.
//! * [`report`] ties everything into reproducible, serialisable runs used by
//!   the `linnik` binary.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod arithmetic;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod harmonic;
pub mod lattice;
pub mod mc;
pub mod parallel;
pub mod report;

pub use error::{LinnikError, Result};
pub use geometry::{CapSpec, Rotation, Vec3};
pub use lattice::{enumerate_points, LatticeConfig, LatticePoint};
pub use mc::{estimate_variance, VarianceEstimate};
