use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{LinnikError, Result};
use crate::exact::S_BETA_MAX;
use crate::mc::DEFAULT_SAMPLES;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Enumerate,
    Variance,
    Spectrum,
    Verify,
    Arithmetic,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Enumerate => "enumerate",
            Command::Variance => "variance",
            Command::Spectrum => "spectrum",
            Command::Verify => "verify",
            Command::Arithmetic => "arithmetic",
        }
    }
}

impl FromStr for Command {
    type Err = LinnikError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "enumerate" => Command::Enumerate,
            "variance" => Command::Variance,
            "spectrum" => Command::Spectrum,
            "verify" => Command::Verify,
            "arithmetic" => Command::Arithmetic,
            other => return Err(LinnikError::Config(format!("unknown command {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = LinnikError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(LinnikError::Config(format!("unknown format {other:?}"))),
        }
    }
}

/// Everything a run depends on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: Command,
    pub n: Option<u64>,
    pub n_min: Option<u64>,
    pub n_max: Option<u64>,
    /// Cap exponent: `σ(Ω_R) = 4π N_n^{−δ}`. Ignored when `radius` is set.
    pub delta: f64,
    #[serde(rename = "R")]
    pub radius: Option<f64>,
    pub samples: usize,
    pub seed: u64,
    /// `None` picks the smallest degree meeting the Parseval target.
    pub m_max: Option<usize>,
    pub beta_max: u32,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Run variance on inadmissible `n`.
    pub force: bool,
    /// Number of `n` values in a sweep.
    pub sweep_count: usize,
    /// Dirichlet polynomial length for `arithmetic`.
    pub x: f64,
    /// Restrict `verify` to one group (`exact`, `harmonic`, `arithmetic`).
    pub group: Option<String>,
    /// Multiplies every floating-point tolerance in `verify`.
    pub tolerance_scale: f64,
}

impl ExperimentConfig {
    pub fn new(command: Command) -> Self {
        ExperimentConfig {
            command,
            n: None,
            n_min: None,
            n_max: None,
            delta: 0.5,
            radius: None,
            samples: DEFAULT_SAMPLES,
            seed: 0,
            m_max: None,
            beta_max: 500,
            format: Format::Json,
            out: None,
            force: false,
            sweep_count: 20,
            x: 10_000.0,
            group: None,
            tolerance_scale: 1.0,
        }
    }

    /// Defaults, then `file`, then `cli`.
    pub fn resolve(command: Command, file: &Overrides, cli: &Overrides) -> Result<Self> {
        let mut c = ExperimentConfig::new(command);
        file.apply(&mut c);
        cli.apply(&mut c);
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(LinnikError::domain("delta", self.delta, "(0, 1)"));
        }
        if self.beta_max > S_BETA_MAX {
            return Err(LinnikError::Config(format!(
                "beta_max = {} exceeds {S_BETA_MAX}",
                self.beta_max
            )));
        }
        if !(self.tolerance_scale >= 0.0) {
            return Err(LinnikError::domain(
                "tolerance_scale",
                self.tolerance_scale,
                "[0, ∞)",
            ));
        }
        if let Some(g) = &self.group {
            if !matches!(g.as_str(), "exact" | "harmonic" | "arithmetic") {
                return Err(LinnikError::Config(format!("unknown verify group {g:?}")));
            }
        }
        Ok(())
    }
}

/// Optional settings from one source (config file or command line).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub n: Option<u64>,
    pub n_min: Option<u64>,
    pub n_max: Option<u64>,
    pub delta: Option<f64>,
    pub radius: Option<f64>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub m_max: Option<usize>,
    pub beta_max: Option<u32>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub force: Option<bool>,
    pub sweep_count: Option<usize>,
    pub x: Option<f64>,
    pub group: Option<String>,
    pub tolerance_scale: Option<f64>,
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| LinnikError::Config(format!("bad value {value:?} for {key}")))
}

impl Overrides {
    /// Reads the flat `key = value` map produced by [`parse_config_file`].
    pub fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let mut o = Overrides::default();
        for (key, v) in map {
            let v = v.as_str();
            match key.as_str() {
                "n" => o.n = Some(parse(key, v)?),
                "n_min" => o.n_min = Some(parse(key, v)?),
                "n_max" => o.n_max = Some(parse(key, v)?),
                "delta" => o.delta = Some(parse(key, v)?),
                "r" => o.radius = Some(parse(key, v)?),
                "samples" => o.samples = Some(parse(key, v)?),
                "seed" => o.seed = Some(parse(key, v)?),
                "m_max" => {
                    o.m_max = match v {
                        "auto" => None,
                        _ => Some(parse(key, v)?),
                    }
                }
                "beta_max" => o.beta_max = Some(parse(key, v)?),
                "format" => o.format = Some(v.parse()?),
                "out" => o.out = Some(PathBuf::from(v)),
                "force" => o.force = Some(parse(key, v)?),
                "count" => o.sweep_count = Some(parse(key, v)?),
                "x" => o.x = Some(parse(key, v)?),
                "group" => o.group = Some(v.to_string()),
                "tolerance_scale" => o.tolerance_scale = Some(parse(key, v)?),
                other => return Err(LinnikError::Config(format!("unknown key {other:?}"))),
            }
        }
        Ok(o)
    }

    pub fn apply(&self, c: &mut ExperimentConfig) {
        macro_rules! set {
            ($($field:ident => $target:ident),* $(,)?) => {
                $(if let Some(v) = &self.$field { c.$target = v.clone(); })*
            };
        }
        set!(delta => delta, samples => samples, seed => seed, beta_max => beta_max,
             format => format, force => force, sweep_count => sweep_count, x => x,
             tolerance_scale => tolerance_scale);
        macro_rules! set_opt {
            ($($field:ident),* $(,)?) => {
                $(if self.$field.is_some() { c.$field = self.$field.clone(); })*
            };
        }
        set_opt!(n, n_min, n_max, radius, m_max, out, group);
    }
}

/// Parses `key = value` lines. `#` starts a comment; keys are case-insensitive
/// and `-` is treated as `_`.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(LinnikError::Config(format!(
                "line {}: expected key = value",
                i + 1
            )));
        };
        let key = k.trim().to_ascii_lowercase().replace('-', "_");
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_cli_precedence() {
        let text = "# sweep\nn-min = 1000\nn_max=5000\nseed = 7\nformat = csv\nR = 0.3\n";
        let file = Overrides::from_map(&parse_config_file(text).unwrap()).unwrap();
        let cli = Overrides {
            seed: Some(9),
            ..Default::default()
        };
        let c = ExperimentConfig::resolve(Command::Variance, &file, &cli).unwrap();
        assert_eq!((c.n_min, c.n_max), (Some(1000), Some(5000)));
        assert_eq!(c.seed, 9);
        assert_eq!(c.format, Format::Csv);
        assert_eq!(c.radius, Some(0.3));
        assert_eq!(c.samples, DEFAULT_SAMPLES);
    }

    #[test]
    fn bad_config_lines() {
        assert!(parse_config_file("n 5").is_err());
        let m = parse_config_file("bogus = 1").unwrap();
        assert!(Overrides::from_map(&m).is_err());
        let m = parse_config_file("n = -1").unwrap();
        assert!(Overrides::from_map(&m).is_err());
        let bad = Overrides {
            delta: Some(1.5),
            ..Default::default()
        };
        assert!(ExperimentConfig::resolve(Command::Variance, &Overrides::default(), &bad).is_err());
    }

    #[test]
    fn config_round_trips_through_json() {
        let mut c = ExperimentConfig::new(Command::Spectrum);
        c.n = Some(389);
        c.m_max = Some(700);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<ExperimentConfig>(&s).unwrap(), c);
    }
}
