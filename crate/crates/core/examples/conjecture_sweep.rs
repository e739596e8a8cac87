//! V / (σ̃ N_n) across admissible n with σ(Ω_R) = 4π N_n^{−δ}, written as a
//! CSV plot table.
//!
//! ```text
//! cargo run --release --example conjecture_sweep -- 1000 100000 20
//! ```

use linnik::report::{sweep, Command, ExperimentConfig};

fn main() -> linnik::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (lo, hi) = (args.first().copied().unwrap_or(1000), args.get(1).copied().unwrap_or(20_000));
    let mut config = ExperimentConfig::new(Command::Variance);
    config.sweep_count = args.get(2).copied().unwrap_or(10) as usize;
    config.samples = 50_000;
    config.seed = 1;

    let report = sweep(&config, lo, hi)?;
    println!("n,count,R,variance,std_error,ratio");
    for r in &report.runs {
        println!("{},{},{:.5},{:.4},{:.4},{:.4}", r.n, r.count, r.r, r.variance, r.std_error, r.ratio);
    }
    eprintln!("median ratio {:.4}", report.median_ratio);
    Ok(())
}
