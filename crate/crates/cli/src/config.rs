//! Command-line grammar and the validated run configuration.

use std::path::PathBuf;

use bohr_core::corpus::TheoremKind;
use bohr_core::params::parse_param;
use bohr_core::power_series::C64;
use bohr_core::quasiconformal::{dilatation_from_distortion, distortion_from_dilatation};
use clap::{Args, Parser, Subcommand};

use crate::error::CliError;
use crate::format::Format;
use crate::grid::KGrid;

/// Default truncation order; `BOHR_DEFAULT_ORDER` overrides it.
pub const DEFAULT_ORDER: usize = 2048;
/// Smallest order accepted by `verify`.
pub const MIN_VERIFY_ORDER: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "bohr", version, about = "Bohr radii of quasiconformal harmonic mappings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one or all radius equations at a single k (or K).
    Solve {
        /// Solve every equation (the default when --eq is absent).
        #[arg(long, conflicts_with = "eq")]
        all: bool,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Radius against K over a grid, as CSV by default.
    Sweep {
        /// MIN:MAX:STEPS (uniform in k) or a comma-separated list of K values.
        #[arg(long, default_value = "1:inf:11")]
        grid: KGrid,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Check a theorem's Bohr inequality on a fixture or a generated corpus.
    Verify {
        #[command(flatten)]
        config: RunConfig,
    },
    /// Exploratory margins for the conjectured b₁ = 0 radii at k = 1.
    Conjecture {
        /// a: convex φ, b: univalent φ.
        #[arg(long, value_parser = ["a", "b"])]
        part: String,
        /// Use g ≡ 0 for every generated case.
        #[arg(long)]
        analytic_only: bool,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Dump catalog entries as JSON (or CSV/table).
    Catalog {
        #[command(flatten)]
        config: RunConfig,
    },
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Radius equation id, e.g. ConvexQC or UnivalentQC_b1zero.
    #[arg(long)]
    pub eq: Option<String>,
    /// Dilatation bound k in [0, 1].
    #[arg(long, conflicts_with = "big_k", allow_negative_numbers = true)]
    pub k: Option<f64>,
    /// Distortion K ≥ 1 (`inf` allowed).
    #[arg(long = "K", id = "big_k", allow_negative_numbers = true)]
    pub big_k: Option<f64>,
    /// convex, convex-b1zero, univalent or univalent-b1zero.
    #[arg(long)]
    pub theorem: Option<TheoremKind>,
    /// Catalog entry or extremal pair used as a fixture.
    #[arg(long)]
    pub entry: Option<String>,
    /// Entry parameter as name=value; complex values like 1-0.5i are allowed.
    #[arg(long = "param", value_parser = parse_param_arg)]
    pub params: Vec<(String, C64)>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of generated cases.
    #[arg(long, default_value_t = 200)]
    pub count: u64,
    /// Truncation order N.
    #[arg(long, env = "BOHR_DEFAULT_ORDER", default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    /// Evaluation radius; defaults to the relevant theorem radius.
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_param_arg(s: &str) -> Result<(String, C64), String> {
    parse_param(s).map_err(|e| e.to_string())
}

impl RunConfig {
    /// The dilatation bound from `--k` or `--K`, if either was given.
    pub fn dilatation(&self) -> Result<Option<f64>, CliError> {
        match (self.k, self.big_k) {
            (Some(k), None) => {
                if !(0.0..=1.0).contains(&k) {
                    return Err(CliError::Usage(format!("--k {k} must lie in [0, 1]")));
                }
                Ok(Some(k))
            }
            (None, Some(big_k)) => dilatation_from_distortion(big_k)
                .map(Some)
                .map_err(|_| CliError::Usage(format!("--K {big_k} must be at least 1"))),
            (None, None) => Ok(None),
            (Some(_), Some(_)) => Err(CliError::Usage("give either --k or --K, not both".into())),
        }
    }

    pub fn require_dilatation(&self) -> Result<f64, CliError> {
        self.dilatation()?.ok_or_else(|| CliError::Usage("one of --k or --K is required".into()))
    }

    pub fn verify_order(&self) -> Result<usize, CliError> {
        if self.order < MIN_VERIFY_ORDER {
            return Err(CliError::Usage(format!("--order {} is below {MIN_VERIFY_ORDER}", self.order)));
        }
        Ok(self.order)
    }

    pub fn radius_override(&self) -> Result<Option<f64>, CliError> {
        match self.r {
            Some(r) if !(r > 0.0 && r < 1.0) => Err(CliError::Usage(format!("--r {r} must lie in (0, 1)"))),
            r => Ok(r),
        }
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

/// `K` for a dilatation bound, `∞` at `k = 1`.
pub fn distortion(k: f64) -> f64 {
    distortion_from_dilatation(k).expect("k validated to [0, 1]")
}
