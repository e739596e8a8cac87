//! Spectral side: cap transform, Parseval convergence, the variance as a
//! sum over Weyl-sum powers, and Hilb's approximation of P_m.

use linnik::geometry::CapSpec;
use linnik::harmonic::{
    default_m_max, harmonic_spectrum, hilb_approx, legendre, shc_transform_closed,
    shc_transform_quadrature,
};
use linnik::lattice::enumerate_points;

fn main() -> linnik::Result<()> {
    let r = 0.3;
    println!("h_R(m) for R = {r}:");
    for m in [0, 1, 2, 5, 10, 50] {
        println!(
            "  m = {m:>3}: closed {:+.12}, quadrature {:+.12}",
            shc_transform_closed(m, r)?,
            shc_transform_quadrature(m, r)?
        );
    }

    let config = enumerate_points(389)?;
    let cap = CapSpec::for_count_exponent(config.count(), 0.5)?;
    let m_max = default_m_max(&cap);
    let s = harmonic_spectrum(&config, &cap, m_max)?;
    println!(
        "n = 389, R = {:.4}: m_max = {m_max}, Parseval {:.6} of {:.6}",
        cap.radius,
        s.parseval_partial(),
        cap.area
    );
    println!("V_spectral = {:.4}, tail ≤ {:.4}", s.variance_spectral, s.truncation_bound);

    let theta: f64 = 0.05;
    println!("Hilb at θ = {theta}:");
    for m in [1, 5, 10, 20] {
        let p = legendre(m, theta.cos());
        let h = hilb_approx(m, theta)?;
        println!("  m = {m:>2}: P_m {p:.10}, Hilb {h:.10}, |diff|/θ² {:.4}", (p - h).abs() / (theta * theta));
    }
    Ok(())
}
