//! Exact arithmetic for the Hecke-eigenvalue identities.
//!
//! `λ(p^k)` is represented by its Satake-parameter form
//! `(α^{k+1} − α^{−k−1}) / (α − α^{−1}) = Σ_{j=0}^{k} α^{k−2j}`, so every
//! relation between powers of `λ(p)` and `λ(p²)` becomes an equality of
//! integer Laurent polynomials.

mod combinatorics;
mod laurent;

pub use combinatorics::*;
pub use laurent::LaurentPoly;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
