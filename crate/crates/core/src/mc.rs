//! Monte Carlo estimation of the cap-count variance
//!
//! ```text
//! V(n; Ω_R) = ∫_{SO(3)} ( Z(n; gΩ_R) − σ(Ω_R)/(4π) · N_n )² dμ(g)
//! ```
//!
//! over Haar-random rotations, and the independent-points model.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LinnikError, Result};
use crate::geometry::{count_above, sample_rotation, stream_rng, AnnulusSpec, CapSpec, Vec3};
use crate::lattice::LatticeConfig;

/// Samples drawn from one generator stream. Fixing the block size (not the
/// worker count) is what makes the estimate independent of parallelism.
pub const BLOCK_SIZE: usize = 1024;

pub const DEFAULT_SAMPLES: usize = 100_000;
pub const MIN_SAMPLES: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarianceEstimate {
    pub n: u64,
    pub cap: CapSpec,
    pub samples: usize,
    pub seed: u64,
    pub mean_z: f64,
    /// Sample standard deviation of `Z` about its own mean.
    pub z_std_dev: f64,
    /// Mean of `(Z − expected_z)²`.
    pub variance: f64,
    /// Standard error of `variance`.
    pub std_error: f64,
    pub expected_z: f64,
}

impl VarianceEstimate {
    pub fn relative_std_error(&self) -> f64 {
        if self.variance > 0.0 {
            self.std_error / self.variance
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    z: f64,
    z2: f64,
    d: f64,
    d2: f64,
}

impl Moments {
    fn push(&mut self, z: f64, expected: f64) {
        let d = (z - expected) * (z - expected);
        self.z += z;
        self.z2 += z * z;
        self.d += d;
        self.d2 += d * d;
    }

    fn merge(self, o: Moments) -> Moments {
        Moments {
            z: self.z + o.z,
            z2: self.z2 + o.z2,
            d: self.d + o.d,
            d2: self.d2 + o.d2,
        }
    }
}

/// Per-block sums, reduced in block order.
fn sample_moments<F>(samples: usize, seed: u64, expected: f64, count: F) -> Moments
where
    F: Fn(&Vec3) -> usize + Sync,
{
    let blocks = samples.div_ceil(BLOCK_SIZE);
    let partials: Vec<Moments> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream_rng(seed, b as u64);
            let len = BLOCK_SIZE.min(samples - b * BLOCK_SIZE);
            let mut m = Moments::default();
            for _ in 0..len {
                let g = sample_rotation(&mut rng);
                m.push(count(&g.pole_image()) as f64, expected);
            }
            m
        })
        .collect();
    partials.into_iter().fold(Moments::default(), Moments::merge)
}

fn summarise(m: Moments, samples: usize) -> (f64, f64, f64, f64) {
    let s = samples as f64;
    let mean_z = m.z / s;
    let var_z = ((m.z2 - s * mean_z * mean_z) / (s - 1.0)).max(0.0);
    let variance = m.d / s;
    let var_d = ((m.d2 - s * variance * variance) / (s - 1.0)).max(0.0);
    (mean_z, var_z.sqrt(), variance, (var_d / s).sqrt())
}

fn check_inputs(config: &LatticeConfig, samples: usize) -> Result<()> {
    if config.is_empty() {
        return Err(LinnikError::NoPoints(config.n));
    }
    if samples < MIN_SAMPLES {
        return Err(LinnikError::Config(format!(
            "samples = {samples} is below the minimum {MIN_SAMPLES}"
        )));
    }
    Ok(())
}

/// Estimates `V(n; Ω_R)` from `samples` Haar-random rotations of the cap.
///
/// Deviations are taken from the exact expectation `σ(Ω_R) N_n / 4π`, not
/// from the sample mean. The cap's own center is irrelevant because the
/// rotated pole is uniformly distributed.
pub fn estimate_variance(
    config: &LatticeConfig,
    cap: &CapSpec,
    samples: usize,
    seed: u64,
) -> Result<VarianceEstimate> {
    check_inputs(config, samples)?;
    let expected_z = cap.area_fraction() * config.count() as f64;
    let points = &config.unit_points;
    let moments = if cap.is_full_sphere() {
        let mut m = Moments::default();
        for _ in 0..samples {
            m.push(points.len() as f64, expected_z);
        }
        m
    } else {
        let threshold = cap.cos_radius();
        sample_moments(samples, seed, expected_z, |c| count_above(points, c, threshold))
    };
    let (mean_z, z_std_dev, variance, std_error) = summarise(moments, samples);
    Ok(VarianceEstimate {
        n: config.n,
        cap: *cap,
        samples,
        seed,
        mean_z,
        z_std_dev,
        variance,
        std_error,
        expected_z,
    })
}

/// Variance of annulus counts. No spectral counterpart is provided.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnulusEstimate {
    pub n: u64,
    pub annulus: AnnulusSpec,
    pub samples: usize,
    pub seed: u64,
    pub variance: f64,
    pub std_error: f64,
    pub expected_z: f64,
}

pub fn estimate_annulus_variance(
    config: &LatticeConfig,
    annulus: &AnnulusSpec,
    samples: usize,
    seed: u64,
) -> Result<AnnulusEstimate> {
    check_inputs(config, samples)?;
    let expected_z = annulus.area() / (4.0 * std::f64::consts::PI) * config.count() as f64;
    let points = &config.unit_points;
    let (co, ci) = (annulus.outer.cos(), annulus.inner.cos());
    let moments = sample_moments(samples, seed, expected_z, |c| {
        points
            .iter()
            .filter(|p| {
                let t = p.dot(c);
                t > co && t <= ci
            })
            .count()
    });
    let (_, _, variance, std_error) = summarise(moments, samples);
    Ok(AnnulusEstimate {
        n: config.n,
        annulus: *annulus,
        samples,
        seed,
        variance,
        std_error,
        expected_z,
    })
}

/// Variance `σ̃ N (1 − σ̃)` of the count when `N` points are independent and
/// uniform on the sphere.
pub fn random_model_prediction(sigma_tilde: f64, count: usize) -> Result<f64> {
    if !(sigma_tilde > 0.0 && sigma_tilde < 1.0) {
        return Err(LinnikError::domain("sigma_tilde", sigma_tilde, "(0, 1)"));
    }
    Ok(model_variance(sigma_tilde, count))
}

/// Unchecked form of [`random_model_prediction`], defined on `[0, 1]`.
pub fn model_variance(sigma_tilde: f64, count: usize) -> f64 {
    sigma_tilde * count as f64 * (1.0 - sigma_tilde)
}

/// `V / (σ̃ N_n)` for an explicit cap; `0` when the cap is the full sphere.
pub fn variance_ratio(
    config: &LatticeConfig,
    cap: &CapSpec,
    samples: usize,
    seed: u64,
) -> Result<(f64, VarianceEstimate)> {
    let est = estimate_variance(config, cap, samples, seed)?;
    let scale = cap.area_fraction() * config.count() as f64;
    Ok((est.variance / scale, est))
}

/// `V / (σ̃ N_n)` with the cap sized by `σ(Ω_R) = 4π N_n^{−δ}`.
///
/// This ratio stays of order one as `n` grows through admissible values.
pub fn conjecture_ratio(
    config: &LatticeConfig,
    delta: f64,
    samples: usize,
    seed: u64,
) -> Result<(f64, VarianceEstimate)> {
    if !config.flags.admissible {
        return Err(LinnikError::Config(format!(
            "n = {} is not squarefree with n ≢ 7 (mod 8)",
            config.n
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(LinnikError::domain("delta", delta, "(0, 1)"));
    }
    if config.is_empty() {
        return Err(LinnikError::NoPoints(config.n));
    }
    let cap = CapSpec::for_count_exponent(config.count(), delta)?;
    variance_ratio(config, &cap, samples, seed)
}
