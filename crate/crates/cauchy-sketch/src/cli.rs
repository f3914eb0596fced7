//! Command-line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::io::Format;

/// Default seed when neither `--seed` nor `CAUCHY_SKETCH_SEED` is set.
pub const DEFAULT_SEED: u64 = 0;

/// Cauchy random projections for l1 distances.
///
/// Exit codes: 0 success, 1 verification failure, 2 usage or infeasible
/// parameters, 3 I/O or file format errors.
#[derive(Debug, Clone, Parser)]
#[command(name = "cauchy-sketch", version, about, long_about)]
pub struct CliConfig {
    /// Operation to run.
    #[command(subcommand)]
    pub command: Command,
}

/// Subcommands.
#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Plan the target dimension k for N points at distortion epsilon.
    Plan(PlanArgs),
    /// Project a point set with a seeded Cauchy matrix.
    Sketch(SketchArgs),
    /// Estimate all pairwise l1 distances from a sketch.
    Estimate(EstimateArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

/// Seed flags shared by the randomized commands.
#[derive(Debug, Clone, Copy, Args)]
pub struct SeedArgs {
    /// Generator seed.
    #[arg(long, env = "CAUCHY_SKETCH_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Generator stream.
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
}

/// Flags of `plan`.
#[derive(Debug, Clone, Args)]
pub struct PlanArgs {
    /// Distortion, 0 < epsilon <= 1/4.
    #[arg(long, allow_negative_numbers = true)]
    pub epsilon: f64,
    /// Number of points N >= 2.
    #[arg(long)]
    pub n: u64,
    /// Failure exponent c >= 3; the plan fails with probability about N^-c.
    #[arg(long, default_value_t = 3.0)]
    pub c: f64,
    /// Also write the plan as JSON to this file.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Flags of `sketch`.
#[derive(Debug, Clone, Args)]
pub struct SketchArgs {
    /// Point set, one point per row.
    #[arg(long)]
    pub input: PathBuf,
    /// Input encoding; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Sketch file to write (binary); metadata goes to <output>.meta.json.
    #[arg(long)]
    pub output: PathBuf,
    /// Distortion, 0 < epsilon <= 1/4.
    #[arg(long, default_value_t = 0.25, allow_negative_numbers = true)]
    pub epsilon: f64,
    /// Failure exponent c >= 3.
    #[arg(long, default_value_t = 3.0)]
    pub c: f64,
    /// Use this target dimension instead of the planned one.
    #[arg(long)]
    pub k: Option<u64>,
    /// Seed of the projection matrix.
    #[command(flatten)]
    pub rng: SeedArgs,
}

/// Flags of `estimate`.
#[derive(Debug, Clone, Args)]
pub struct EstimateArgs {
    /// Sketch file written by `sketch`; its .meta.json must sit beside it.
    #[arg(long)]
    pub input: PathBuf,
    /// CSV table to write; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Distortion used for the regime tags; defaults to the sketch's.
    #[arg(long, allow_negative_numbers = true)]
    pub epsilon: Option<f64>,
}

/// Flags of `verify`.
#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Suite: specfun, cauchy, metric, moments, concentration, sketch or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Override every Monte Carlo sample size; 0 skips Monte Carlo cases.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Write the report as JSON lines to this file.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Record wall-clock time in the report (makes it non-reproducible).
    #[arg(long)]
    pub timing: bool,
    /// Seed of the Monte Carlo cases.
    #[command(flatten)]
    pub rng: SeedArgs,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        CliConfig::command().debug_assert();
    }

    #[test]
    fn parses_plan() {
        let c = CliConfig::try_parse_from(["cauchy-sketch", "plan", "--epsilon", "0.25", "--n", "100", "--c", "3"]).unwrap();
        match c.command {
            Command::Plan(p) => assert_eq!((p.epsilon, p.n, p.c), (0.25, 100, 3.0)),
            _ => panic!("wrong subcommand"),
        }
    }

    #[test]
    fn missing_flag_is_a_usage_error() {
        let e = CliConfig::try_parse_from(["cauchy-sketch", "plan", "--n", "100"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }
}
