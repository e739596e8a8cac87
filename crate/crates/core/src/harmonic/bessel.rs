use std::f64::consts::PI;

use crate::error::{LinnikError, Result};

/// Below this the power series is used; above it the Hankel expansion.
const SERIES_LIMIT: f64 = 12.0;

/// Distance kept from `θ = π` by [`hilb_approx`].
pub const HILB_EPSILON: f64 = 0.01;

/// Bessel function of the first kind of order zero, to about `1e-12`.
pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= SERIES_LIMIT {
        series(ax)
    } else {
        hankel(ax)
    }
}

// Σ (−x²/4)^k / (k!)²
fn series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * k);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1.0) {
            return sum;
        }
        k += 1.0;
    }
}

// J0(x) = √(2/πx) (P cos χ − Q sin χ), χ = x − π/4, with the asymptotic
// series truncated at its smallest term.
fn hankel(x: f64) -> f64 {
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    let mut k = 1usize;
    loop {
        let odd = (2 * k - 1) as f64;
        let next = term * odd * odd / (8.0 * k as f64 * x);
        if next >= term.abs() || next < 1e-18 {
            break;
        }
        term = next;
        // a_k = (−1)^k ∏(2j−1)² / (k! 8^k x^k); even k feed P, odd k feed Q
        // with alternating signs.
        match k % 4 {
            0 => p += term,
            1 => q -= term,
            2 => p -= term,
            _ => q += term,
        }
        k += 1;
    }
    let chi = x - 0.25 * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Main term `√(θ / sin θ) · J0((m + ½) θ)` of Hilb's approximation to
/// `P_m(cos θ)`, for `0 < θ < π − ε`.
pub fn hilb_approx(m: usize, theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < PI - HILB_EPSILON) {
        return Err(LinnikError::domain("theta", theta, "(0, π − 0.01)"));
    }
    Ok((theta / theta.sin()).sqrt() * bessel_j0((m as f64 + 0.5) * theta))
}
