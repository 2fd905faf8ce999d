//! Command-line front end: configuration, subcommands and output formats.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use dressed_core::ModeIndex;

pub mod commands;
pub mod config;
pub mod output;

pub use commands::Artifacts;
pub use config::{Regime, RunConfig};
pub use dressed_core::Error;

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

/// Bad flags, config entries or parameter combinations.
#[derive(Debug, Clone, PartialEq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Dressed atoms in a spherical cavity.
#[derive(Debug, Parser)]
#[command(name = "dressed", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenfrequency condition curves and their intersections.
    Spectrum {
        /// First normal mode shown.
        #[arg(long)]
        k_min: Option<usize>,
        /// Last normal mode shown.
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// Time trace of one amplitude f_{mu nu}(t).
    Amplitude {
        /// Row index: `atom` or a field mode number.
        #[arg(long)]
        mu: Option<ModeIndex>,
        /// Column index: `atom` or a field mode number.
        #[arg(long)]
        nu: Option<ModeIndex>,
    },
    /// Degree of impurity in free space and in a small cavity.
    Impurity,
    /// Reduced density matrix elements and von Neumann entropy.
    Entropy,
    /// Normal-mode frequencies and transformation matrix.
    MatrixDump,
    /// Compare the analytic pipeline with dense diagonalization.
    OracleCheck,
}

#[derive(Debug, Args, Default)]
pub struct Overrides {
    /// Flat key = value configuration file, applied before the flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    #[arg(long, global = true)]
    pub g: Option<f64>,
    #[arg(long, global = true)]
    pub omega_bar: Option<f64>,
    #[arg(long, global = true)]
    pub c: Option<f64>,
    #[arg(long, global = true)]
    pub xi: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    /// cavity, small-cavity or free-space.
    #[arg(long, global = true)]
    pub regime: Option<String>,
    #[arg(long, global = true)]
    pub t_max: Option<f64>,
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    #[arg(long, global = true)]
    pub n_modes: Option<usize>,
    /// CSV destination; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// SVG plot destination.
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
}

impl Cli {
    /// Defaults, then the config file, then flags.
    pub fn resolve(&self) -> anyhow::Result<RunConfig> {
        let mut cfg = RunConfig::default();
        let o = &self.overrides;
        if let Some(path) = &o.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
            cfg.apply_file(&text)?;
        }
        macro_rules! take {
            ($($field:ident),*) => {$(if let Some(v) = o.$field.clone() { cfg.$field = v; })*};
        }
        take!(delta, g, omega_bar, c, xi, phi, t_max, steps);
        if let Some(n) = o.n_modes {
            cfg.n_modes = Some(n);
        }
        if let Some(r) = &o.regime {
            cfg.regime = r.parse()?;
        }
        if let Some(p) = &o.out {
            cfg.out = Some(p.clone());
        }
        if let Some(p) = &o.svg {
            cfg.svg = Some(p.clone());
        }
        match &self.command {
            Command::Spectrum { k_min, k_max } => {
                cfg.k_min = k_min.unwrap_or(cfg.k_min);
                cfg.k_max = k_max.unwrap_or(cfg.k_max);
            }
            Command::Amplitude { mu, nu } => {
                cfg.mu = mu.unwrap_or(cfg.mu);
                cfg.nu = nu.unwrap_or(cfg.nu);
            }
            _ => {}
        }
        Ok(cfg)
    }

    pub fn execute(&self, cfg: &RunConfig) -> anyhow::Result<Artifacts> {
        match self.command {
            Command::Spectrum { .. } => commands::spectrum(cfg),
            Command::Amplitude { .. } => commands::amplitude(cfg),
            Command::Impurity => commands::impurity_curves(cfg),
            Command::Entropy => commands::entropy(cfg),
            Command::MatrixDump => commands::matrix_dump(cfg),
            Command::OracleCheck => commands::oracle_check(cfg),
        }
    }
}

/// Maps a failure to the process exit code.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<UsageError>().is_some() || err.downcast_ref::<clap::Error>().is_some() {
        return EXIT_USAGE;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::InvalidParameter { .. } | Error::RegimeViolation(_)) => EXIT_USAGE,
        Some(Error::InvariantViolation(_) | Error::NormalizationFailure { .. }) => EXIT_INVARIANT,
        _ => EXIT_NUMERICAL,
    }
}
