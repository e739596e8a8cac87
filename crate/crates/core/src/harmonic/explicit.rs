//! Explicit real spherical harmonics of low degree.
//!
//! This is the slow validation path for the addition theorem: the basis is
//! built from associated Legendre functions and checked against the
//! zonal-sum shortcut used everywhere else.

use std::f64::consts::PI;

use crate::geometry::Vec3;

/// Degree ceiling for the explicit basis.
pub const MAX_EXPLICIT_DEGREE: usize = 20;

/// Associated Legendre `P_l^k(t)` for `l = k..=m`, without the
/// Condon–Shortley phase.
fn associated_legendre(m: usize, k: usize, t: f64) -> f64 {
    let s = (1.0 - t * t).max(0.0).sqrt();
    let mut pkk = 1.0;
    for i in 1..=k {
        pkk *= (2 * i - 1) as f64 * s;
    }
    if m == k {
        return pkk;
    }
    let mut prev = pkk;
    let mut cur = t * (2 * k + 1) as f64 * pkk;
    for l in (k + 2)..=m {
        let next = ((2 * l - 1) as f64 * t * cur - (l + k - 1) as f64 * prev) / (l - k) as f64;
        prev = cur;
        cur = next;
    }
    cur
}

/// `(m − k)! / (m + k)!`
fn factorial_ratio(m: usize, k: usize) -> f64 {
    ((m - k + 1)..=(m + k)).fold(1.0, |acc, i| acc / i as f64)
}

/// Orthonormal real harmonics `Y_{m,k}(x)`, `k = −m..=m`, for the surface
/// measure of total mass `4π`.
pub fn real_spherical_harmonics(m: usize, x: &Vec3) -> Vec<f64> {
    assert!(m <= MAX_EXPLICIT_DEGREE, "explicit basis is limited to m ≤ 20");
    let t = x.z.clamp(-1.0, 1.0);
    let phi = x.y.atan2(x.x);
    let base = (2 * m + 1) as f64 / (4.0 * PI);
    let mut out = vec![0.0; 2 * m + 1];
    out[m] = base.sqrt() * associated_legendre(m, 0, t);
    for k in 1..=m {
        let norm = (2.0 * base * factorial_ratio(m, k)).sqrt();
        let p = norm * associated_legendre(m, k, t);
        let kf = k as f64;
        out[m + k] = p * (kf * phi).cos();
        out[m - k] = p * (kf * phi).sin();
    }
    out
}

/// `S_m = Σ_k (Σ_i Y_{m,k}(x_i))²` from the explicit basis.
pub fn weyl_power_explicit(points: &[Vec3], m: usize) -> f64 {
    let mut sums = vec![0.0; 2 * m + 1];
    for p in points {
        for (s, y) in sums.iter_mut().zip(real_spherical_harmonics(m, p)) {
            *s += y;
        }
    }
    sums.iter().map(|s| s * s).sum()
}
