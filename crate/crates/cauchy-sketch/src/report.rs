//! Line-delimited JSON reports and the summary printer.
//!
//! A report is a header line, one line per case, and a closing tally line.
//! Every line is a JSON object with a `"type"` field. Non-finite numbers
//! are written as `null`.

use std::fmt::Write as _;
use std::io::BufRead;

use cauchy_sketch_core::verify::{CaseResult, VerificationReport};
use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
struct Header<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    suite: &'a str,
    seed: u64,
    stream: u64,
    generator: &'a str,
    library_version: &'static str,
    trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    runtime_ms: Option<u64>,
}

#[derive(Serialize)]
struct CaseLine<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    index: usize,
    #[serde(flatten)]
    case: &'a CaseResult,
}

#[derive(Serialize)]
struct Tally {
    #[serde(rename = "type")]
    kind: &'static str,
    passed: bool,
    gated_pass: usize,
    gated_fail: usize,
    informational: usize,
}

/// Serialize `report` as JSON lines, each terminated by `\n`.
pub fn to_jsonl(report: &VerificationReport) -> String {
    let mut out = String::new();
    let header = Header {
        kind: "header",
        suite: &report.suite,
        seed: report.rng.seed,
        stream: report.rng.stream_id,
        generator: &report.generator,
        library_version: env!("CARGO_PKG_VERSION"),
        trials: report.trials,
        runtime_ms: report.runtime_ms,
    };
    push_line(&mut out, &header);
    for (index, case) in report.cases.iter().enumerate() {
        push_line(&mut out, &CaseLine { kind: "case", index, case });
    }
    let (gated_pass, gated_fail, informational) = report.tally();
    push_line(
        &mut out,
        &Tally {
            kind: "tally",
            passed: report.passed(),
            gated_pass,
            gated_fail,
            informational,
        },
    );
    out
}

fn push_line<T: Serialize>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string(value).expect("report values serialize"));
    out.push('\n');
}

/// Counts recovered from a report stream.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Summary {
    /// Suite name from the header.
    pub suite: String,
    /// Gated cases that passed.
    pub gated_pass: usize,
    /// Gated cases that failed.
    pub gated_fail: usize,
    /// Informational cases.
    pub informational: usize,
    /// Formatted lines for failures and informational cases.
    pub notes: Vec<String>,
}

impl Summary {
    /// Whether every gated case passed.
    pub fn passed(&self) -> bool {
        self.gated_fail == 0
    }
}

fn num(v: &Value, key: &str) -> String {
    match v.get(key) {
        Some(Value::Number(n)) => n.to_string(),
        _ => "nan".into(),
    }
}

/// Read a report stream and tally its case lines.
pub fn summarize<R: BufRead>(reader: R) -> Result<Summary, String> {
    let mut s = Summary::default();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| e.to_string())?;
        if line.trim().is_empty() {
            continue;
        }
        let v: Value = serde_json::from_str(&line).map_err(|e| format!("line {}: {e}", i + 1))?;
        match v.get("type").and_then(Value::as_str) {
            Some("header") => s.suite = v.get("suite").and_then(Value::as_str).unwrap_or("").into(),
            Some("case") => {
                let gated = v.get("gated").and_then(Value::as_bool).unwrap_or(true);
                let pass = v.get("pass").and_then(Value::as_bool).unwrap_or(false);
                let label = match (gated, pass) {
                    (true, true) => {
                        s.gated_pass += 1;
                        continue;
                    }
                    (true, false) => {
                        s.gated_fail += 1;
                        "FAIL"
                    }
                    (false, true) => {
                        s.informational += 1;
                        "info ok"
                    }
                    (false, false) => {
                        s.informational += 1;
                        "info violated"
                    }
                };
                let mut note = String::new();
                let _ = write!(
                    note,
                    "{label:<13} {} [{}] closed_form={} oracle={} residual={} tolerance={}",
                    v.get("name").and_then(Value::as_str).unwrap_or("?"),
                    v.get("input").and_then(Value::as_str).unwrap_or(""),
                    num(&v, "closed_form"),
                    num(&v, "oracle"),
                    num(&v, "residual"),
                    num(&v, "tolerance"),
                );
                if let Some(se) = v.get("std_error").filter(|x| !x.is_null()) {
                    let _ = write!(note, " se={se}");
                }
                s.notes.push(note);
            }
            Some("tally") | None | Some(_) => {}
        }
    }
    Ok(s)
}

/// Human-readable summary text.
pub fn render_summary(s: &Summary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "suite {}", s.suite);
    for n in &s.notes {
        let _ = writeln!(out, "  {n}");
    }
    let _ = writeln!(
        out,
        "{}: {} passed, {} failed, {} informational",
        if s.passed() { "PASS" } else { "FAIL" },
        s.gated_pass,
        s.gated_fail,
        s.informational
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cauchy_sketch_core::cauchy::RngSeed;

    fn sample() -> VerificationReport {
        let mut r = VerificationReport::new("demo", RngSeed::new(3, 4), Some(10));
        r.cases.push(CaseResult::equality("a", "x=1".into(), 1.0, 1.0, 0.0));
        r.cases.push(CaseResult::upper_bound("b", "x=2".into(), 0.0, f64::NAN, 0.0));
        r.cases
            .push(CaseResult::monte_carlo("c", "n=10".into(), 0.1, 0.5, 0.01).informational());
        r
    }

    #[test]
    fn lines_parse_back() {
        let text = to_jsonl(&sample());
        assert_eq!(text.lines().count(), 5);
        assert!(text.lines().all(|l| serde_json::from_str::<Value>(l).is_ok()));
        assert!(!text.contains("runtime_ms"));
        let s = summarize(text.as_bytes()).unwrap();
        assert_eq!((s.gated_pass, s.gated_fail, s.informational), (1, 1, 1));
        assert_eq!(s.suite, "demo");
        assert!(!s.passed());
        let rendered = render_summary(&s);
        assert!(rendered.contains("FAIL"));
        assert!(rendered.contains("oracle=nan"));
        assert!(rendered.contains("info violated"));
    }

    #[test]
    fn output_is_stable() {
        assert_eq!(to_jsonl(&sample()), to_jsonl(&sample()));
    }
}
