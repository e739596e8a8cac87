//! The transform `h_R(m) = 2π ∫_0^R P_m(cos θ) sin θ dθ` of the cap indicator.

use std::f64::consts::PI;

use crate::error::{LinnikError, Result};
use crate::geometry::cap_area;

use super::quadrature::{GaussLegendre, PANEL_NODES};

fn check_radius(radius: f64) -> Result<()> {
    if !(radius > 0.0 && radius <= PI) {
        return Err(LinnikError::domain("R", radius, "(0, π]"));
    }
    Ok(())
}

/// `h_R(m)` by composite Gauss–Legendre quadrature in `θ`, panels no wider
/// than `min(R, π/(m+1))`.
pub fn shc_transform_quadrature(m: usize, radius: f64) -> Result<f64> {
    check_radius(radius)?;
    let rule = GaussLegendre::panel();
    let width = radius.min(PI / (m as f64 + 1.0));
    let panels = (radius / width).ceil().max(1.0) as usize;
    let width = radius / panels as f64;
    let half = 0.5 * width;
    let mut total = 0.0;
    let mut t = [0.0; PANEL_NODES];
    let mut prev = [0.0; PANEL_NODES];
    let mut cur = [0.0; PANEL_NODES];
    for k in 0..panels {
        let mid = width * (k as f64 + 0.5);
        for (i, x) in rule.nodes.iter().enumerate() {
            t[i] = (mid + half * x).cos();
        }
        // Run the recurrence for every node at once: independent chains,
        // one coefficient pair per degree.
        prev.fill(1.0);
        cur.copy_from_slice(&t);
        if m == 0 {
            cur.fill(1.0);
        }
        for j in 1..m {
            let jf = j as f64;
            let a = (2.0 * jf + 1.0) / (jf + 1.0);
            let b = jf / (jf + 1.0);
            for i in 0..PANEL_NODES {
                let next = a * t[i] * cur[i] - b * prev[i];
                prev[i] = cur[i];
                cur[i] = next;
            }
        }
        let mut acc = 0.0;
        for (i, (x, w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
            acc += w * cur[i] * (mid + half * x).sin();
        }
        total += acc * half;
    }
    Ok(2.0 * PI * total)
}

/// `h_R(m) = 2π (P_{m−1}(cos R) − P_{m+1}(cos R)) / (2m + 1)`, from
/// `(2m+1) P_m = P'_{m+1} − P'_{m−1}`. `m = 0` returns the cap area.
pub fn shc_transform_closed(m: usize, radius: f64) -> Result<f64> {
    Ok(transform_table(radius, m)?[m])
}

/// `h_R(0..=m_max)` from a single Legendre recurrence at `cos R`.
///
/// The recurrence runs on the differences `E_m = P_m − P_{m−1}` with
/// `u = 1 − cos R = 2 sin²(R/2)`, so small caps do not lose digits to the
/// cancellation in `P_{m−1} − P_{m+1}`.
pub fn transform_table(radius: f64, m_max: usize) -> Result<Vec<f64>> {
    check_radius(radius)?;
    let area = cap_area(radius)?;
    let half = (0.5 * radius).sin();
    let u = 2.0 * half * half;
    let mut h = Vec::with_capacity(m_max + 1);
    h.push(area);
    // (m+1) E_{m+1} = m E_m − (2m+1) u P_m
    let mut p = 1.0 - u;
    let mut e = -u;
    for m in 1..=m_max {
        let mf = m as f64;
        let e_next = (mf * e - (2.0 * mf + 1.0) * u * p) / (mf + 1.0);
        h.push(-2.0 * PI * (e + e_next) / (2.0 * mf + 1.0));
        p += e_next;
        e = e_next;
    }
    Ok(h)
}

/// Cumulative `Σ_{k ≤ m} h(k)² (2k+1)/(4π)`; the limit is `σ(Ω_R)`.
pub fn parseval_partial_sums(h: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    h.iter()
        .enumerate()
        .map(|(m, v)| {
            acc += v * v * (2 * m + 1) as f64 / (4.0 * PI);
            acc
        })
        .collect()
}

/// Transform of the smoothed kernel `K_{R+ρ} ∗ K_ρ / σ(Ω_ρ)`:
/// `h_{R+ρ}(m) h_ρ(m) / σ(Ω_ρ)`.
pub fn smoothed_transform(radius: f64, rho: f64, m: usize) -> Result<f64> {
    if !(rho > 0.0 && rho < radius) {
        return Err(LinnikError::domain("rho", rho, "(0, R)"));
    }
    if radius + rho > PI {
        return Err(LinnikError::domain("R + rho", radius + rho, "(0, π]"));
    }
    let outer = shc_transform_closed(m, radius + rho)?;
    let inner = shc_transform_closed(m, rho)?;
    Ok(outer * inner / cap_area(rho)?)
}
