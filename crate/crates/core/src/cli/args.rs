//! Command-line grammar and the matching `--config` file schema.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "scalefree",
    version,
    about = "Scale-free fluctuation functions, golden-mean convergents and 1/f spectra"
)]
pub struct Cli {
    /// JSON file whose keys mirror the long flags; flags win over it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Also write the JSON run summary to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub summary: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Cascade,
    Spectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TaperArg {
    Hann,
    Rectangular,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the fluctuation factor at one point or on a log-spaced grid.
    Phi(PhiArgs),
    /// List Fibonacci convergents of the golden mean, or run the convergent evolution.
    Convergents(ConvergentArgs),
    /// Simulate a cascade or a reference power-law signal.
    Simulate(SimulateArgs),
    /// Estimate the power spectrum of a CSV signal and fit its exponent.
    Spectrum(SpectrumArgs),
    /// Run the invariant suite.
    Verify,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<f64>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub eps_one: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PhiArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    /// `lo:hi:n`, n log-spaced points.
    #[arg(long, value_name = "LO:HI:N")]
    pub grid: Option<Grid>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct ConvergentArgs {
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Iterate the convergent evolution instead of listing Fibonacci ratios.
    #[arg(long)]
    pub evolve: bool,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Epoch growth factor of the cascade; defaults to 1/|k|.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Spectral exponent of the reference signal.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// CSV with a header; uses column `x`, or the last column.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub segments: Option<usize>,
    /// Fit band `lo:hi` in cycles per step.
    #[arg(long, value_name = "LO:HI")]
    pub band: Option<Band>,
    #[arg(long, value_enum)]
    pub taper: Option<TaperArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(format!("expected lo:hi:n, got `{s}`"));
        };
        let lo = parse_real(lo)?;
        let hi = parse_real(hi)?;
        let n: usize = n.parse().map_err(|_| format!("bad point count `{n}`"))?;
        if !(lo > 0.0 && hi >= lo && n >= 1) {
            return Err(format!("grid needs 0 < lo <= hi and n >= 1, got `{s}`"));
        }
        Ok(Grid { lo, hi, n })
    }
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let (a, b) = (self.lo.ln(), self.hi.ln());
        let last = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| match i {
                0 => self.lo,
                i if i == self.n - 1 => self.hi,
                i => (a + (b - a) * i as f64 / last).exp(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Band {
    pub lo: f64,
    pub hi: f64,
}

impl FromStr for Band {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let Some((lo, hi)) = s.split_once(':') else {
            return Err(format!("expected lo:hi, got `{s}`"));
        };
        let lo = parse_real(lo)?;
        let hi = parse_real(hi)?;
        if !(lo > 0.0 && hi > lo) {
            return Err(format!("band needs 0 < lo < hi, got `{s}`"));
        }
        Ok(Band { lo, hi })
    }
}

fn parse_real(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("malformed number `{s}`"))
}

/// Contents of a `--config` file. Keys match the long flags, with either
/// dashes or underscores.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub summary: Option<PathBuf>,
    pub k: Option<f64>,
    pub depth: Option<usize>,
    #[serde(alias = "eps_one")]
    pub eps_one: Option<f64>,
    pub t: Option<f64>,
    pub grid: Option<String>,
    #[serde(alias = "n_max")]
    pub n_max: Option<u32>,
    pub evolve: Option<bool>,
    pub kind: Option<Kind>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub lambda: Option<f64>,
    pub alpha: Option<f64>,
    pub input: Option<PathBuf>,
    pub segments: Option<usize>,
    pub band: Option<String>,
    pub taper: Option<TaperArg>,
}
