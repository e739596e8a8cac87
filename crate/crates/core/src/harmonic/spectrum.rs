use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{LinnikError, Result};
use crate::geometry::CapSpec;
use crate::lattice::LatticeConfig;

use super::transform::{parseval_partial_sums, transform_table};
use super::weyl::weyl_power_lattice;

/// Truncation cap for the automatic degree policy.
pub const MAX_M_MAX: usize = 10_000;

/// Relative Parseval deficit targeted by [`default_m_max`].
pub const PARSEVAL_TARGET: f64 = 1e-3;

/// Per-degree spectral data for one configuration and cap.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicSpectrum {
    pub n: u64,
    pub cap: CapSpec,
    pub m_max: usize,
    pub h: Vec<f64>,
    pub weyl_power: Vec<f64>,
    /// Cumulative Parseval sums, one per degree.
    pub parseval: Vec<f64>,
    pub variance_spectral: f64,
    pub truncation_bound: f64,
    pub parseval_deficit: f64,
}

impl HarmonicSpectrum {
    pub fn parseval_partial(&self) -> f64 {
        *self.parseval.last().expect("at least degree 0")
    }

    pub fn summary(&self) -> SpectralVariance {
        SpectralVariance {
            m_max: self.m_max,
            variance_spectral: self.variance_spectral,
            truncation_bound: self.truncation_bound,
            parseval_deficit: self.parseval_deficit,
        }
    }

    pub fn dump(&self) -> SpectrumDump {
        SpectrumDump {
            n: self.n,
            r: self.cap.radius,
            m_max: self.m_max,
            h: self.h.clone(),
            weyl_power: self.weyl_power.clone(),
            variance_spectral: self.variance_spectral,
            truncation_bound: self.truncation_bound,
            parseval_deficit: self.parseval_deficit,
        }
    }

    /// Plot table `m, h, h², S_m, cumulative Parseval`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,h,h_squared,weyl_power,parseval_cumulative\n");
        for m in 0..=self.m_max {
            let h = self.h[m];
            out.push_str(&format!(
                "{m},{h},{},{},{}\n",
                h * h,
                self.weyl_power[m],
                self.parseval[m]
            ));
        }
        out
    }
}

/// The JSON spectrum record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDump {
    pub n: u64,
    #[serde(rename = "R")]
    pub r: f64,
    pub m_max: usize,
    pub h: Vec<f64>,
    pub weyl_power: Vec<f64>,
    pub variance_spectral: f64,
    pub truncation_bound: f64,
    pub parseval_deficit: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralVariance {
    pub m_max: usize,
    pub variance_spectral: f64,
    /// Rigorous bound on the omitted degrees `m > m_max`.
    pub truncation_bound: f64,
    pub parseval_deficit: f64,
}

/// Smallest `M ≥ 1` with Parseval deficit at most `PARSEVAL_TARGET · σ(Ω_R)`,
/// capped at [`MAX_M_MAX`].
pub fn default_m_max(cap: &CapSpec) -> usize {
    let h = transform_table(cap.radius, MAX_M_MAX).expect("cap radius validated");
    let sums = parseval_partial_sums(&h);
    let target = (1.0 - PARSEVAL_TARGET) * cap.area;
    sums.iter()
        .enumerate()
        .skip(1)
        .find(|(_, s)| **s >= target)
        .map_or(MAX_M_MAX, |(m, _)| m)
}

/// Full spectrum up to `m_max`.
pub fn harmonic_spectrum(
    config: &LatticeConfig,
    cap: &CapSpec,
    m_max: usize,
) -> Result<HarmonicSpectrum> {
    if m_max < 1 {
        return Err(LinnikError::Config("m_max must be at least 1".into()));
    }
    if config.is_empty() {
        return Err(LinnikError::NoPoints(config.n));
    }
    let h = transform_table(cap.radius, m_max)?;
    let weyl_power = weyl_power_lattice(config, m_max);
    let parseval = parseval_partial_sums(&h);

    let variance_spectral = (1..=m_max)
        .map(|m| h[m] * h[m] * weyl_power[m])
        .sum::<f64>()
        / (4.0 * PI);

    let mut deficit = cap.area - parseval[m_max];
    if deficit < 0.0 {
        if deficit < -1e-9 * cap.area.max(1.0) {
            return Err(LinnikError::Normalization(deficit));
        }
        deficit = 0.0;
    }
    // Tail: (1/4π) Σ_{m > M} h² S_m ≤ (N²/4π) Σ_{m > M} h² (2m+1)/(4π).
    let count = config.count() as f64;
    let truncation_bound = count * count / (4.0 * PI) * deficit;

    Ok(HarmonicSpectrum {
        n: config.n,
        cap: *cap,
        m_max,
        h,
        weyl_power,
        parseval,
        variance_spectral,
        truncation_bound,
        parseval_deficit: deficit,
    })
}

/// `V = (1/4π) Σ_{m=1}^{m_max} h(m)² S_m` together with its tail bound.
pub fn harmonic_variance(
    config: &LatticeConfig,
    cap: &CapSpec,
    m_max: usize,
) -> Result<SpectralVariance> {
    harmonic_spectrum(config, cap, m_max).map(|s| s.summary())
}
