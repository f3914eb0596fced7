//! Case records and reports.

use alloc::string::String;
use alloc::vec::Vec;

use crate::cauchy::{RngSeed, GENERATOR};

use super::stats::MC_SIGMAS;

/// How a case decides pass or fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CaseKind {
    /// `|oracle − closed_form| ≤ tolerance`.
    Equality,
    /// `oracle − closed_form ≤ tolerance`; the closed form is an upper bound.
    UpperBound,
    /// Monte Carlo: `empirical ≤ bound + 3·SE`.
    MonteCarlo,
}

/// One oracle comparison.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CaseResult {
    /// Stable case identifier.
    pub name: String,
    /// Description of the inputs.
    pub input: String,
    /// Decision rule.
    pub kind: CaseKind,
    /// Closed-form value or bound.
    pub closed_form: f64,
    /// Oracle value (quadrature, brute arithmetic or empirical).
    pub oracle: f64,
    /// `oracle − closed_form`.
    pub residual: f64,
    /// Allowed residual.
    pub tolerance: f64,
    /// Standard error of a Monte Carlo oracle.
    pub std_error: Option<f64>,
    /// Outcome of the decision rule.
    pub pass: bool,
    /// Whether the outcome counts toward the report verdict.
    pub gated: bool,
}

impl CaseResult {
    /// Two-sided comparison.
    pub fn equality(name: &str, input: String, closed_form: f64, oracle: f64, tolerance: f64) -> Self {
        let residual = oracle - closed_form;
        Self {
            name: name.into(),
            input,
            kind: CaseKind::Equality,
            closed_form,
            oracle,
            residual,
            tolerance,
            std_error: None,
            pass: libm::fabs(residual) <= tolerance,
            gated: true,
        }
    }

    /// One-sided comparison: `value` may not exceed `bound` by more than
    /// `slack`.
    pub fn upper_bound(name: &str, input: String, bound: f64, value: f64, slack: f64) -> Self {
        let residual = value - bound;
        Self {
            name: name.into(),
            input,
            kind: CaseKind::UpperBound,
            closed_form: bound,
            oracle: value,
            residual,
            tolerance: slack,
            std_error: None,
            pass: residual <= slack,
            gated: true,
        }
    }

    /// Statistical comparison against `bound` with standard error `se`.
    pub fn monte_carlo(name: &str, input: String, bound: f64, empirical: f64, se: f64) -> Self {
        let residual = empirical - bound;
        let tolerance = MC_SIGMAS * se;
        Self {
            name: name.into(),
            input,
            kind: CaseKind::MonteCarlo,
            closed_form: bound,
            oracle: empirical,
            residual,
            tolerance,
            std_error: Some(se),
            pass: residual <= tolerance,
            gated: true,
        }
    }

    /// Keep the outcome for the record but exclude it from the verdict.
    pub fn informational(mut self) -> Self {
        self.gated = false;
        self
    }

    /// Whether this case blocks the report.
    pub fn is_gated_failure(&self) -> bool {
        self.gated && !self.pass
    }
}

/// All cases of a suite run.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VerificationReport {
    /// Suite name.
    pub suite: String,
    /// Root seed of the Monte Carlo cases.
    pub rng: RngSeed,
    /// Generator identity.
    pub generator: String,
    /// Trial override in effect, if any.
    pub trials: Option<u64>,
    /// Wall-clock time; filled in by callers that have a clock.
    pub runtime_ms: Option<u64>,
    /// Cases in execution order.
    pub cases: Vec<CaseResult>,
}

impl VerificationReport {
    /// Empty report for `suite`.
    pub fn new(suite: &str, rng: RngSeed, trials: Option<u64>) -> Self {
        Self {
            suite: suite.into(),
            rng,
            generator: GENERATOR.into(),
            trials,
            runtime_ms: None,
            cases: Vec::new(),
        }
    }

    /// True when no gated case failed.
    pub fn passed(&self) -> bool {
        !self.cases.iter().any(CaseResult::is_gated_failure)
    }

    /// Gated failures.
    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| c.is_gated_failure())
    }

    /// `(gated passes, gated failures, informational)` counts.
    pub fn tally(&self) -> (usize, usize, usize) {
        let mut t = (0, 0, 0);
        for c in &self.cases {
            match (c.gated, c.pass) {
                (true, true) => t.0 += 1,
                (true, false) => t.1 += 1,
                (false, _) => t.2 += 1,
            }
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decision_rules() {
        assert!(CaseResult::equality("a", String::new(), 1.0, 1.0 + 1e-10, 1e-9).pass);
        assert!(!CaseResult::equality("a", String::new(), 1.0, 1.0 - 1e-8, 1e-9).pass);
        assert!(CaseResult::upper_bound("b", String::new(), 1.0, -5.0, 0.0).pass);
        assert!(!CaseResult::upper_bound("b", String::new(), 1.0, 1.1, 0.0).pass);
        let mc = CaseResult::monte_carlo("c", String::new(), 0.01, 0.012, 0.001);
        assert!(mc.pass);
        assert_eq!(mc.tolerance, 0.003);
        assert!(!CaseResult::monte_carlo("c", String::new(), 0.01, 0.014, 0.001).pass);
    }

    #[test]
    fn informational_failures_do_not_gate() {
        let mut r = VerificationReport::new("x", RngSeed::default(), None);
        r.cases.push(CaseResult::upper_bound("b", String::new(), 0.0, 1.0, 0.0).informational());
        assert!(r.passed());
        assert_eq!(r.tally(), (0, 0, 1));
        r.cases.push(CaseResult::upper_bound("b", String::new(), 0.0, 1.0, 0.0));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }
}
