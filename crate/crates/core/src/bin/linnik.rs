use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use linnik::parallel::{threads_from_env, with_threads};
use linnik::report::{
    self, parse_config_file, Command, ExperimentConfig, Format, Overrides, EXIT_USAGE,
};

/// Lattice points on spheres: enumeration, cap-count variance, spectra and
/// exact identity checks.
#[derive(Parser)]
#[command(name = "linnik", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the integer points of x² + y² + z² = n.
    Enumerate(Flags),
    /// Monte Carlo, spectral and model cap-count variance.
    Variance(Flags),
    /// Per-degree spectral data.
    Spectrum(Flags),
    /// Exact and numerical identity suite.
    Verify(Flags),
    /// λ₀, weight and prime-sum tables for χ₋n.
    Arithmetic(Flags),
}

#[derive(Args)]
struct Flags {
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    n_min: Option<u64>,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Cap radius; overrides --delta.
    #[arg(long = "R")]
    radius: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    m_max: Option<usize>,
    #[arg(long)]
    beta_max: Option<u32>,
    #[arg(long, value_parser = ["json", "csv"])]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat key = value file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Run variance on n that is not squarefree or is 7 mod 8.
    #[arg(long)]
    force: bool,
    /// Number of n values in a variance sweep.
    #[arg(long)]
    count: Option<usize>,
    /// Dirichlet polynomial length for `arithmetic`.
    #[arg(long)]
    x: Option<f64>,
    /// Restrict `verify` to one group.
    #[arg(long)]
    group: Option<String>,
    #[arg(long, hide = true)]
    tolerance_scale: Option<f64>,
}

impl Flags {
    fn overrides(&self) -> Overrides {
        Overrides {
            n: self.n,
            n_min: self.n_min,
            n_max: self.n_max,
            delta: self.delta,
            radius: self.radius,
            samples: self.samples,
            seed: self.seed,
            m_max: self.m_max,
            beta_max: self.beta_max,
            format: self.format.as_deref().map(|f| f.parse::<Format>().expect("checked by clap")),
            out: self.out.clone(),
            force: self.force.then_some(true),
            sweep_count: self.count,
            x: self.x,
            group: self.group.clone(),
            tolerance_scale: self.tolerance_scale,
        }
    }
}

fn resolve(command: Command, flags: &Flags) -> linnik::Result<ExperimentConfig> {
    let file = match &flags.config {
        Some(path) => Overrides::from_map(&parse_config_file(&std::fs::read_to_string(path)?)?)?,
        None => Overrides::default(),
    };
    ExperimentConfig::resolve(command, &file, &flags.overrides())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let (command, flags) = match &cli.command {
        Cmd::Enumerate(f) => (Command::Enumerate, f),
        Cmd::Variance(f) => (Command::Variance, f),
        Cmd::Spectrum(f) => (Command::Spectrum, f),
        Cmd::Verify(f) => (Command::Verify, f),
        Cmd::Arithmetic(f) => (Command::Arithmetic, f),
    };
    let result = resolve(command, flags).and_then(|config| {
        let outcome = with_threads(threads_from_env(), || report::run(&config))?;
        match &config.out {
            Some(path) => std::fs::write(path, &outcome.output)?,
            None => print!("{}", outcome.output),
        }
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
