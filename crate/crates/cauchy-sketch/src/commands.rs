//! The four commands. Each is a pure function of its flags, input files and
//! seed; text meant for standard output is returned rather than printed.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use cauchy_sketch_core::cauchy::RngSeed;
use cauchy_sketch_core::concentration::{plan_dimension, ChernoffPlan};
use cauchy_sketch_core::metric::SketchedPoint;
use cauchy_sketch_core::sketch::{estimate_all_pairs, sketch_dataset, SketchConfig};
use cauchy_sketch_core::verify::{run_suite, Suite, SuiteOptions, VerificationReport};
use cauchy_sketch_core::Error as CoreError;

use crate::cli::{Command, CliConfig, EstimateArgs, PlanArgs, SketchArgs, VerifyArgs};
use crate::error::CliError;
use crate::io::{read_bin, read_points, write_bin, Format};
use crate::meta::{sidecar_path, KSource, SketchMeta};
use crate::report::{render_summary, summarize, to_jsonl};

/// Run the parsed command, writing its standard output to `out`.
pub fn run<W: Write>(cfg: &CliConfig, out: &mut W) -> Result<(), CliError> {
    let text = match &cfg.command {
        Command::Plan(a) => cmd_plan(a)?.text,
        Command::Sketch(a) => cmd_sketch(a)?.text,
        Command::Estimate(a) => {
            let table = cmd_estimate(a)?;
            if a.output.is_some() {
                String::new()
            } else {
                table
            }
        }
        Command::Verify(a) => {
            let v = cmd_verify(a)?;
            emit(out, &v.summary)?;
            return match v.report.failures().count() {
                0 => Ok(()),
                n => Err(CliError::Verification(n)),
            };
        }
    };
    emit(out, &text)
}

fn emit<W: Write>(out: &mut W, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::io("standard output", e))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path.display(), e))
}

/// Result of `plan`.
#[derive(Debug, Clone)]
pub struct PlanOutcome {
    /// The plan.
    pub plan: ChernoffPlan,
    /// Printed table.
    pub text: String,
}

/// Plan `k` for `(ε, N, c)`. Infeasible parameters are usage errors.
pub fn cmd_plan(args: &PlanArgs) -> Result<PlanOutcome, CliError> {
    let plan = plan_dimension(args.epsilon, args.n, args.c).map_err(CliError::usage)?;
    let text = render_plan(&plan);
    if let Some(path) = &args.output {
        let mut json = serde_json::to_string_pretty(&plan).map_err(|e| CliError::io(path.display(), e))?;
        json.push('\n');
        write_file(path, &json)?;
    }
    Ok(PlanOutcome { plan, text })
}

fn tag<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

/// Plain-text rendering of a plan.
pub fn render_plan(p: &ChernoffPlan) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "epsilon            {}", p.epsilon);
    if let (Some(n), Some(c)) = (p.n_points, p.c) {
        let _ = writeln!(s, "n_points           {n}");
        let _ = writeln!(s, "c                  {c}");
    }
    let _ = writeln!(s, "delta              {:e}", p.delta_fail);
    let _ = writeln!(s, "ln(2/delta)        {}", p.log_factor);
    let _ = writeln!(s);
    let _ = writeln!(s, "{:<20} {:<6} {:>14} {:>18} {:>14}", "branch", "side", "lambda", "rate_reciprocal", "u_star");
    for e in &p.entries {
        let lambda = e.lambda.map_or_else(|| "-".to_string(), |l| format!("{l:.6e}"));
        let _ = writeln!(
            s,
            "{:<20} {:<6} {:>14} {:>18.6} {:>14.6e}",
            tag(&e.branch),
            tag(&e.side),
            lambda,
            e.rate,
            e.u_star
        );
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "attained           {}", tag(&p.attained));
    let _ = writeln!(s, "max rate (upper)   {}", p.rate_reciprocal_upper);
    let _ = writeln!(s, "max rate (lower)   {}", p.rate_reciprocal_lower);
    let _ = writeln!(s, "lambda0            {:e}", p.lambda0);
    let _ = writeln!(s, "upper tail unproven for lambda <= {}", p.unproven_upper_below);
    let _ = writeln!(s, "iterations         {}", p.iterations);
    let _ = writeln!(s, "k                  {}", p.k);
    s
}

/// Result of `sketch`.
#[derive(Debug, Clone)]
pub struct SketchOutcome {
    /// Metadata written beside the sketch.
    pub meta: SketchMeta,
    /// Printed confirmation.
    pub text: String,
}

/// Read points, project them and write the sketch and its metadata.
pub fn cmd_sketch(args: &SketchArgs) -> Result<SketchOutcome, CliError> {
    let format = args.format.unwrap_or_else(|| Format::from_path(&args.input));
    let points = read_points(&args.input, format)?;
    let n = points.len() as u64;
    let mut cfg = SketchConfig::new(args.epsilon, args.c, n);
    if let Some(k) = args.k {
        cfg = cfg.with_k(k);
    }
    let rng = RngSeed::new(args.rng.seed, args.rng.stream);
    let (m, sketches) = sketch_dataset(&points, &cfg, rng).map_err(CliError::usage)?;
    write_bin(&args.output, sketches.len(), m.k(), sketches.iter().map(SketchedPoint::coords))?;
    let source = if args.k.is_some() { KSource::Override } else { KSource::Planned };
    let meta = SketchMeta::new(rng, n, points.dim() as u64, m.k() as u64, args.epsilon, args.c, source, format);
    let meta_path = sidecar_path(&args.output);
    meta.write(&meta_path)?;
    let text = format!(
        "wrote {n} sketches of dimension {} ({} k) to {}\nmetadata {}\n",
        m.k(),
        tag(&source),
        args.output.display(),
        meta_path.display()
    );
    Ok(SketchOutcome { meta, text })
}

/// Estimate every pairwise distance of a sketch as CSV rows
/// `i,j,rho,l1_estimate,regime`. Writes to `--output` when given and
/// returns the table either way.
pub fn cmd_estimate(args: &EstimateArgs) -> Result<String, CliError> {
    let meta = SketchMeta::read(&sidecar_path(&args.input))?;
    let (n, k, data) = read_bin(&args.input)?;
    if n as u64 != meta.n || k as u64 != meta.k {
        return Err(CliError::io(
            args.input.display(),
            format!("sketch is {n} x {k} but metadata says {} x {}", meta.n, meta.k),
        ));
    }
    let sketches = data
        .chunks_exact(k)
        .map(|row| SketchedPoint::new(row.to_vec()))
        .collect::<Result<Vec<_>, CoreError>>()
        .map_err(|e| CliError::io(args.input.display(), e))?;
    let epsilon = args.epsilon.unwrap_or(meta.epsilon);
    let pairs = estimate_all_pairs(&sketches, epsilon).map_err(CliError::usage)?;
    let mut table = String::from("i,j,rho,l1_estimate,regime\n");
    for (i, j, e) in pairs {
        let _ = writeln!(table, "{i},{j},{},{},{}", e.rho, e.l1, e.regime.tag());
    }
    if let Some(path) = &args.output {
        write_file(path, &table)?;
    }
    Ok(table)
}

/// Result of `verify`.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    /// The report.
    pub report: VerificationReport,
    /// The report as JSON lines.
    pub jsonl: String,
    /// Summary printed from the JSON lines.
    pub summary: String,
}

/// Run a suite, write its report and summarize it.
pub fn cmd_verify(args: &VerifyArgs) -> Result<VerifyOutcome, CliError> {
    let suite = Suite::from_name(&args.suite).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown suite {:?}; expected one of specfun, cauchy, metric, moments, concentration, sketch, all",
            args.suite
        ))
    })?;
    let opts = SuiteOptions {
        seed: RngSeed::new(args.rng.seed, args.rng.stream),
        trials: args.trials,
    };
    let start = Instant::now();
    let mut report = run_suite(suite, &opts);
    if args.timing {
        report.runtime_ms = Some(start.elapsed().as_millis() as u64);
    }
    let jsonl = to_jsonl(&report);
    if let Some(path) = &args.output {
        write_file(path, &jsonl)?;
    }
    let summary = summarize(jsonl.as_bytes()).map_err(|e| CliError::io("report", e))?;
    let mut text = render_summary(&summary);
    if let Some(ms) = report.runtime_ms {
        let _ = writeln!(text, "runtime {ms} ms");
    }
    Ok(VerifyOutcome {
        report,
        jsonl,
        summary: text,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::SeedArgs;

    fn plan_args(epsilon: f64, n: u64) -> PlanArgs {
        PlanArgs { epsilon, n, c: 3.0, output: None }
    }

    #[test]
    fn plan_table_lists_every_entry() {
        let p = cmd_plan(&plan_args(0.25, 100)).unwrap();
        assert_eq!(p.plan.k, 338_846);
        assert!(p.text.contains("large_upper"));
        let rows = p
            .text
            .lines()
            .filter(|l| matches!(l.split_whitespace().nth(1), Some("upper" | "lower")))
            .count();
        assert_eq!(rows, p.plan.entries.len());
        assert_eq!(cmd_plan(&plan_args(0.3, 100)).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn unknown_suite_is_a_usage_error() {
        let args = VerifyArgs {
            suite: "nope".into(),
            trials: None,
            output: None,
            timing: false,
            rng: SeedArgs { seed: 0, stream: 0 },
        };
        assert_eq!(cmd_verify(&args).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn timing_is_opt_in() {
        let mut args = VerifyArgs {
            suite: "specfun".into(),
            trials: Some(0),
            output: None,
            timing: false,
            rng: SeedArgs { seed: 0, stream: 0 },
        };
        let v = cmd_verify(&args).unwrap();
        assert!(v.report.runtime_ms.is_none());
        assert!(v.summary.ends_with("informational\n"));
        args.timing = true;
        let v = cmd_verify(&args).unwrap();
        assert!(v.jsonl.lines().next().unwrap().contains("runtime_ms"));
    }

    #[test]
    fn estimate_rejects_mismatched_metadata() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("p.csv");
        fs::write(&input, "1,2\n3,4\n5,6\n").unwrap();
        let output = dir.path().join("s.bin");
        let sketch = SketchArgs {
            input,
            format: None,
            output: output.clone(),
            epsilon: 0.25,
            c: 3.0,
            k: Some(8),
            rng: SeedArgs { seed: 1, stream: 0 },
        };
        let done = cmd_sketch(&sketch).unwrap();
        assert_eq!((done.meta.n, done.meta.k), (3, 8));
        let args = EstimateArgs { input: output.clone(), output: None, epsilon: None };
        assert_eq!(cmd_estimate(&args).unwrap().lines().count(), 4);

        let mut meta = done.meta;
        meta.k = 9;
        meta.write(&sidecar_path(&output)).unwrap();
        assert_eq!(cmd_estimate(&args).unwrap_err().exit_code(), 3);
    }
}
