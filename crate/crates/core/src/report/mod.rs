//! Reproducible runs: experiment configs, the five commands and their
//! serialised outputs.
//!
//! Every command is a pure function of its [`ExperimentConfig`]; the binary
//! only parses arguments and writes the returned text.

mod config;
mod verify;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arithmetic::{self, PrimeSieve};
use crate::error::{LinnikError, Result};
use crate::exact::{f2_coeff, s_beta, s_beta_within_unit};
use crate::geometry::{CapSpec, Vec3};
use crate::harmonic::{default_m_max, harmonic_spectrum, SpectralVariance};
use crate::lattice::{admissibility, enumerate_points, LatticeConfig};
use crate::mc::{estimate_variance, model_variance, VarianceEstimate};

pub use config::{parse_config_file, Command, ExperimentConfig, Format, Overrides};
pub use verify::{cmd_verify, VerifyItem, VerifyReport};

/// Exit code for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit code for bad arguments, bad configuration or runtime errors.
pub const EXIT_USAGE: i32 = 1;
/// Exit code when `verify` finds a failing check.
pub const EXIT_VERIFY_FAILED: i32 = 2;

/// Text produced by a command plus anything worth telling the operator.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub warnings: Vec<String>,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            warnings: Vec::new(),
            exit_code: EXIT_OK,
        }
    }
}

pub fn run(config: &ExperimentConfig) -> Result<Outcome> {
    match config.command {
        Command::Enumerate => cmd_enumerate(config),
        Command::Variance => cmd_variance(config),
        Command::Spectrum => cmd_spectrum(config),
        Command::Verify => cmd_verify(config),
        Command::Arithmetic => cmd_arithmetic(config),
    }
}

fn require_n(config: &ExperimentConfig) -> Result<u64> {
    config
        .n
        .ok_or_else(|| LinnikError::Config(format!("{} needs --n", config.command.name())))
}

pub fn cmd_enumerate(config: &ExperimentConfig) -> Result<Outcome> {
    let lattice = enumerate_points(require_n(config)?)?;
    let mut out = Outcome::ok(match config.format {
        Format::Json => lattice.to_json(),
        Format::Csv => lattice.to_csv(),
    });
    if lattice.is_empty() {
        out.warnings
            .push(format!("n = {} is not a sum of three squares", lattice.n));
    }
    Ok(out)
}

/// One variance run: Monte Carlo, spectral and independent-points model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarianceRecord {
    pub n: u64,
    pub count: usize,
    #[serde(rename = "R")]
    pub r: f64,
    pub area: f64,
    pub delta: Option<f64>,
    pub samples: usize,
    pub seed: u64,
    pub mean_z: f64,
    pub variance: f64,
    pub std_error: f64,
    pub expected_z: f64,
    pub model_prediction: f64,
    /// `variance / (σ̃ N_n)`.
    pub ratio: f64,
    pub spectral: Option<SpectralVariance>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub delta: Option<f64>,
    pub samples: usize,
    pub seed: u64,
    pub runs: Vec<VarianceRecord>,
    pub median_ratio: f64,
}

fn cap_for(config: &ExperimentConfig, lattice: &LatticeConfig) -> Result<(CapSpec, Option<f64>)> {
    match config.radius {
        Some(r) => Ok((CapSpec::new(Vec3::E3, r)?, None)),
        None => Ok((
            CapSpec::for_count_exponent(lattice.count(), config.delta)?,
            Some(config.delta),
        )),
    }
}

fn check_admissible(config: &ExperimentConfig, n: u64) -> Result<()> {
    if !config.force && !admissibility(n).admissible {
        return Err(LinnikError::Config(format!(
            "n = {n} is not squarefree with n ≢ 7 (mod 8); pass force to run anyway"
        )));
    }
    Ok(())
}

fn variance_record(
    config: &ExperimentConfig,
    lattice: &LatticeConfig,
    spectral: bool,
) -> Result<VarianceRecord> {
    if lattice.is_empty() {
        return Err(LinnikError::NoPoints(lattice.n));
    }
    let (cap, delta) = cap_for(config, lattice)?;
    let est: VarianceEstimate = estimate_variance(lattice, &cap, config.samples, config.seed)?;
    let sigma_tilde = cap.area_fraction();
    let count = lattice.count();
    let spectral = if spectral {
        let m_max = config.m_max.unwrap_or_else(|| default_m_max(&cap));
        Some(harmonic_spectrum(lattice, &cap, m_max)?.summary())
    } else {
        None
    };
    Ok(VarianceRecord {
        n: lattice.n,
        count,
        r: cap.radius,
        area: cap.area,
        delta,
        samples: est.samples,
        seed: est.seed,
        mean_z: est.mean_z,
        variance: est.variance,
        std_error: est.std_error,
        expected_z: est.expected_z,
        model_prediction: model_variance(sigma_tilde.min(1.0), count),
        ratio: est.variance / (sigma_tilde * count as f64),
        spectral,
    })
}

/// Admissible `n` in `[lo, hi]` carrying points, thinned to `want` values
/// spread evenly across the range.
pub fn sweep_values(lo: u64, hi: u64, want: usize) -> Vec<u64> {
    let all: Vec<u64> = (lo.max(1)..=hi)
        .filter(|&n| admissibility(n).admissible)
        .collect();
    if all.len() <= want || want == 0 {
        return all;
    }
    if want == 1 {
        return vec![all[0]];
    }
    (0..want)
        .map(|i| all[i * (all.len() - 1) / (want - 1)])
        .collect()
}

pub fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_by(f64::total_cmp);
    let k = values.len() / 2;
    if values.len() % 2 == 1 {
        values[k]
    } else {
        0.5 * (values[k - 1] + values[k])
    }
}

pub fn cmd_variance(config: &ExperimentConfig) -> Result<Outcome> {
    match (config.n, config.n_min, config.n_max) {
        (Some(n), None, None) => {
            check_admissible(config, n)?;
            let lattice = enumerate_points(n)?;
            let record = variance_record(config, &lattice, true)?;
            Ok(Outcome::ok(match config.format {
                Format::Json => to_json(&record),
                Format::Csv => variance_csv(std::slice::from_ref(&record)),
            }))
        }
        (None, Some(lo), Some(hi)) if lo <= hi => {
            let report = sweep(config, lo, hi)?;
            Ok(Outcome::ok(match config.format {
                Format::Json => to_json(&report),
                Format::Csv => variance_csv(&report.runs),
            }))
        }
        _ => Err(LinnikError::Config(
            "variance needs either --n or both --n-min ≤ --n-max".into(),
        )),
    }
}

/// Monte Carlo ratios over admissible `n ∈ [lo, hi]`.
pub fn sweep(config: &ExperimentConfig, lo: u64, hi: u64) -> Result<SweepReport> {
    let mut runs = Vec::new();
    for n in sweep_values(lo, hi, config.sweep_count) {
        let lattice = enumerate_points(n)?;
        runs.push(variance_record(config, &lattice, false)?);
    }
    if runs.is_empty() {
        return Err(LinnikError::Config(format!(
            "no admissible n in [{lo}, {hi}]"
        )));
    }
    let mut ratios: Vec<f64> = runs.iter().map(|r| r.ratio).collect();
    Ok(SweepReport {
        delta: config.radius.is_none().then_some(config.delta),
        samples: config.samples,
        seed: config.seed,
        runs,
        median_ratio: median(&mut ratios),
    })
}

fn variance_csv(rows: &[VarianceRecord]) -> String {
    let mut out =
        String::from("n,count,R,area,variance,std_error,model_prediction,ratio,variance_spectral\n");
    for r in rows {
        let spectral = r
            .spectral
            .map(|s| s.variance_spectral.to_string())
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.n, r.count, r.r, r.area, r.variance, r.std_error, r.model_prediction, r.ratio, spectral
        );
    }
    out
}

pub fn cmd_spectrum(config: &ExperimentConfig) -> Result<Outcome> {
    let n = require_n(config)?;
    let lattice = enumerate_points(n)?;
    if lattice.is_empty() {
        return Err(LinnikError::NoPoints(n));
    }
    let (cap, _) = cap_for(config, &lattice)?;
    let m_max = config.m_max.unwrap_or_else(|| default_m_max(&cap));
    let spectrum = harmonic_spectrum(&lattice, &cap, m_max)?;
    Ok(Outcome::ok(match config.format {
        Format::Json => to_json(&spectrum.dump()),
        Format::Csv => spectrum.to_csv(),
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightRow {
    pub n: f64,
    pub x: f64,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimeSumRow {
    pub x: f64,
    pub d: u64,
    pub prime_sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArithmeticReport {
    pub d: u64,
    pub x: f64,
    pub lambda0: f64,
    pub fundamental: bool,
    pub l_one_partial: f64,
    pub l_one_tail_bound: f64,
    pub weights: Vec<WeightRow>,
    pub prime_sums: Vec<PrimeSumRow>,
}

/// `λ₀`, a `W(·, x)` table on a geometric grid, and prime sums along
/// powers of ten, for the character `χ_{−d}` with `d = n`.
pub fn cmd_arithmetic(config: &ExperimentConfig) -> Result<Outcome> {
    let d = require_n(config)?;
    let params = arithmetic::ArithmeticParams::new(d, config.x)?;
    let x = params.x;

    const GRID: usize = 10;
    let weights = (0..=GRID)
        .map(|i| {
            let n = if i == 0 { 2.0 } else { x.powf(i as f64 / GRID as f64) };
            let n = n.clamp(2.0, x);
            Ok(WeightRow {
                n,
                x,
                w: arithmetic::weight_w(n, x)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let sieve = PrimeSieve::new(x.floor() as u64)?;
    let mut prime_sums = Vec::new();
    let mut acc = 0.0;
    let mut next_stop = 10.0f64;
    let mut stops = Vec::new();
    while next_stop < x {
        stops.push(next_stop);
        next_stop *= 10.0;
    }
    stops.push(x);
    let mut primes = sieve.primes().peekable();
    for stop in stops {
        while let Some(&p) = primes.peek() {
            if p as f64 > stop {
                break;
            }
            acc += (1.0 + arithmetic::kronecker_chi(d, p) as f64) / p as f64;
            primes.next();
        }
        prime_sums.push(PrimeSumRow {
            x: stop,
            d,
            prime_sum: acc,
        });
    }
    let l = arithmetic::l_one_chi(d, (x as u64).max(1000))?;

    let report = ArithmeticReport {
        d,
        x,
        lambda0: params.lambda0,
        fundamental: l.fundamental,
        l_one_partial: l.value,
        l_one_tail_bound: l.tail_bound,
        weights,
        prime_sums,
    };
    let mut outcome = Outcome::ok(match config.format {
        Format::Json => to_json(&report),
        Format::Csv => arithmetic_csv(&report),
    });
    if !report.fundamental {
        outcome
            .warnings
            .push(format!("−{d} is not a fundamental discriminant; using (−{d} | ·) literally"));
    }
    Ok(outcome)
}

fn arithmetic_csv(r: &ArithmeticReport) -> String {
    let mut out = String::from("quantity,value\n");
    let _ = writeln!(out, "lambda0,{}", r.lambda0);
    let _ = writeln!(out, "l_one_partial,{}", r.l_one_partial);
    let _ = writeln!(out, "l_one_tail_bound,{}", r.l_one_tail_bound);
    out.push_str("\nn,x,W\n");
    for w in &r.weights {
        let _ = writeln!(out, "{},{},{}", w.n, w.x, w.w);
    }
    out.push_str("\nx,d,prime_sum\n");
    for p in &r.prime_sums {
        let _ = writeln!(out, "{},{},{}", p.x, p.d, p.prime_sum);
    }
    out
}

/// `beta, f2_coeff, s_beta_num, s_beta_den, within_unit` for `β ≤ beta_max`.
pub fn s_beta_csv(beta_max: u32) -> String {
    let mut out = String::from("beta,f2_coeff,s_beta_num,s_beta_den,within_unit\n");
    for beta in 0..=beta_max {
        let s = s_beta(beta);
        let _ = writeln!(
            out,
            "{beta},{},{},{},{}",
            f2_coeff(beta),
            s.numer(),
            s.denom(),
            s_beta_within_unit(beta)
        );
    }
    out
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialises");
    s.push('\n');
    s
}
