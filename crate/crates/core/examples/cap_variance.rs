//! Monte Carlo variance of the cap count against the independent-points
//! model, for caps of area 4π N_n^{−δ}.
//!
//! ```text
//! cargo run --release --example cap_variance -- 389 0.5
//! ```

use linnik::geometry::CapSpec;
use linnik::lattice::enumerate_points;
use linnik::mc::{estimate_variance, model_variance};

fn main() -> linnik::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(389);
    let delta: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(0.5);

    let config = enumerate_points(n)?;
    let cap = CapSpec::for_count_exponent(config.count(), delta)?;
    let est = estimate_variance(&config, &cap, 100_000, 7)?;
    let sigma = cap.area_fraction();

    println!("n = {n}, N_n = {}, R = {:.4}, σ̃ = {sigma:.5}", config.count(), cap.radius);
    println!("E[Z] = {:.4}, sample mean {:.4}", est.expected_z, est.mean_z);
    println!("V_MC = {:.4} ± {:.4}", est.variance, est.std_error);
    println!("independent points: {:.4}", model_variance(sigma, config.count()));
    println!("V / (σ̃ N_n) = {:.4}", est.variance / (sigma * config.count() as f64));
    Ok(())
}
