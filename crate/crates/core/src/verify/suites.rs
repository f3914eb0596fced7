//! Named verification suites.
//!
//! Deterministic cases compare a closed form with quadrature or brute
//! arithmetic. Monte Carlo cases compare an empirical frequency with a
//! bound at three standard errors. Cases for claims that are not proven, or
//! that are false as commonly stated, are marked informational.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{E, FRAC_2_PI, FRAC_PI_2, PI};

use crate::cauchy::{cdf_abs, survival_abs, RngSeed};
use crate::concentration::{
    dominating_survival, h_exponent, max_abs_plan_for_delta, plan_dimension, plan_dimension_for_delta,
    xi_survival, xi_tail_bound, RegimeKind,
};
use crate::error::Result;
use crate::metric::{rho_slices, xi, xi_inverse, xi_small_envelope};
use crate::moments::{
    expected_log1p, mu, mu_inverse, mu_prime, mu_small_envelope, second_moment_ratio_bound, second_moment_upper,
    VARIANCE_CAP,
};
use crate::sketch::{build_projection, estimate_l1, project};
use crate::specfun::{
    arctan_inversion_residual, atanh_add_arg, atanh_eval, chi, dilog_reflection_residual, li, ti2, ti2_log_atan,
    zeta,
};
use crate::sum::Neumaier;

use super::montecarlo::{
    abs_cauchy_ks, empirical_k_search_with, exceedance, mgf_split, run_concentration_trial, sorted_xi_draws,
    stability_ks, verify_max_bound, KsCheck, DEFAULT_MAX_K,
};
use super::quadrature::{integrate, quadrature_mean, Integrand};
use super::report::{CaseResult, VerificationReport};
use super::stats::{binomial_se, ks_critical, ks_one_sample};

/// Quadrature tolerance used by every suite.
pub const ORACLE_TOL: f64 = 1e-12;

/// Default sample size for Kolmogorov–Smirnov cases.
pub const DEFAULT_KS_SAMPLES: u64 = 100_000;

/// Default sample size for scalar tail frequencies.
pub const DEFAULT_TAIL_SAMPLES: u64 = 1_000_000;

/// Default number of concentration trials.
pub const DEFAULT_CONCENTRATION_TRIALS: u64 = 1_000;

/// Default number of maximum-of-draws trials.
pub const DEFAULT_MAX_TRIALS: u64 = 10_000;

/// Failure target for the concentration searches.
pub const CONCENTRATION_TARGET: f64 = 0.01;

// Child stream indices of the suite seed, one per experiment.
const GRID_STREAM: u64 = 1;
const KS_STREAM: u64 = 2;
const STABILITY_STREAM: u64 = 3;
const TAIL_STREAM: u64 = 4;
const MGF_STREAM: u64 = 5;
const SEARCH_STREAM: u64 = 6;
const HOLDOUT_STREAM: u64 = 7;
const MAX_STREAM: u64 = 8;
const SKETCH_STREAM: u64 = 9;
const METRIC_STREAM: u64 = 10;

/// A runnable group of cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Suite {
    /// Special-function identities and quadrature cross-checks.
    Specfun,
    /// Law of `|X|` and 1-stability.
    Cauchy,
    /// Axioms of `ρ` and properties of `ξ`.
    Metric,
    /// Moment closed forms against quadrature, plus elementary inequalities.
    Moments,
    /// Tail bounds, planner consistency and concentration experiments.
    Concentration,
    /// Projection and estimation end to end.
    Sketch,
    /// Every suite above, in order.
    All,
}

impl Suite {
    /// The individually runnable suites.
    pub const EACH: [Suite; 6] = [
        Suite::Specfun,
        Suite::Cauchy,
        Suite::Metric,
        Suite::Moments,
        Suite::Concentration,
        Suite::Sketch,
    ];

    /// Lowercase name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Suite::Specfun => "specfun",
            Suite::Cauchy => "cauchy",
            Suite::Metric => "metric",
            Suite::Moments => "moments",
            Suite::Concentration => "concentration",
            Suite::Sketch => "sketch",
            Suite::All => "all",
        }
    }

    /// Inverse of [`Suite::name`].
    pub fn from_name(name: &str) -> Option<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|s| s.name() == name)
    }
}

/// Seed and trial budget of a suite run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Root seed; each experiment uses its own child stream.
    pub seed: RngSeed,
    /// Overrides every Monte Carlo sample size and trial count. `Some(0)`
    /// skips the Monte Carlo cases.
    pub trials: Option<u64>,
}

impl SuiteOptions {
    fn mc(&self, default: u64) -> u64 {
        self.trials.unwrap_or(default)
    }
}

/// Run `suite` and collect its cases.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> VerificationReport {
    let mut report = VerificationReport::new(suite.name(), opts.seed, opts.trials);
    let list: &[Suite] = if suite == Suite::All {
        &Suite::EACH
    } else {
        core::slice::from_ref(&suite)
    };
    for s in list {
        let cases = &mut report.cases;
        match s {
            Suite::Specfun => specfun_cases(cases),
            Suite::Cauchy => cauchy_cases(opts, cases),
            Suite::Metric => metric_cases(opts, cases),
            Suite::Moments => moments_cases(opts, cases),
            Suite::Concentration => concentration_cases(opts, cases),
            Suite::Sketch => sketch_cases(opts, cases),
            Suite::All => {}
        }
    }
    report
}

fn val(r: Result<f64>) -> f64 {
    r.unwrap_or(f64::NAN)
}

// Running worst case of an aggregated comparison. NaN residuals win.
struct Worst {
    input: String,
    closed: f64,
    oracle: f64,
    score: f64,
}

impl Worst {
    fn new() -> Self {
        Self {
            input: String::new(),
            closed: f64::NAN,
            oracle: f64::NAN,
            score: f64::NEG_INFINITY,
        }
    }

    fn offer(&mut self, input: impl FnOnce() -> String, closed: f64, oracle: f64, score: f64) {
        if self.score.is_nan() {
            return;
        }
        if score.is_nan() || score > self.score {
            self.input = input();
            self.closed = closed;
            self.oracle = oracle;
            self.score = score;
        }
    }

    fn equality(self, name: &str, grid: &str, tol: f64) -> CaseResult {
        CaseResult::equality(name, format!("worst of {grid}: {}", self.input), self.closed, self.oracle, tol)
    }

    fn bound(self, name: &str, grid: &str, slack: f64) -> CaseResult {
        CaseResult::upper_bound(name, format!("worst of {grid}: {}", self.input), self.closed, self.oracle, slack)
    }
}

fn eq_worst<I: IntoIterator<Item = (String, f64, f64)>>(name: &str, grid: &str, tol: f64, items: I) -> CaseResult {
    let mut w = Worst::new();
    for (input, closed, oracle) in items {
        w.offer(|| input, closed, oracle, libm::fabs(oracle - closed));
    }
    w.equality(name, grid, tol)
}

// Items are (input, bound, value); the case fails if any value exceeds its
// bound by more than `slack`.
fn bound_worst<I: IntoIterator<Item = (String, f64, f64)>>(name: &str, grid: &str, slack: f64, items: I) -> CaseResult {
    let mut w = Worst::new();
    for (input, bound, value) in items {
        w.offer(|| input, bound, value, value - bound);
    }
    w.bound(name, grid, slack)
}

fn powers_of_ten(lo: i32, hi: i32, per_decade: i32) -> Vec<f64> {
    (lo * per_decade..=hi * per_decade)
        .map(|j| libm::pow(10.0, j as f64 / per_decade as f64))
        .collect()
}

/// `10^j` for `j = −4..4` followed by 50 log-uniform draws on
/// `[10⁻⁴, 10⁴]` from the grid stream of `seed`.
pub fn moment_grid(seed: RngSeed) -> Vec<f64> {
    let mut out = powers_of_ten(-4, 4, 1);
    let mut s = seed.child(GRID_STREAM).stream();
    for _ in 0..50 {
        out.push(libm::pow(10.0, -4.0 + 8.0 * s.next_uniform()));
    }
    out
}

/// Scales in `(0, 2]` for the second-moment ratio bound: a fixed grid and
/// 20 uniform draws.
pub fn ratio_grid(seed: RngSeed) -> Vec<f64> {
    let mut out = alloc::vec![1e-4, 1e-3, 0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0];
    let mut s = seed.child(GRID_STREAM).child(1).stream();
    for _ in 0..20 {
        out.push(2.0 * s.next_uniform());
    }
    out
}

fn brute_series(b: f64, x: f64, odd_only: bool) -> f64 {
    let mut acc = Neumaier::default();
    let mut p = 1.0;
    for j in 1..=20_000u32 {
        p *= x;
        if odd_only && j % 2 == 0 {
            continue;
        }
        acc.add(p / libm::pow(j as f64, b));
    }
    acc.value()
}

fn li2_integral(x: f64) -> Result<f64> {
    let g = |t: f64| -libm::log1p(-t) / t;
    if x == 1.0 {
        integrate(|s: f64| -libm::log(s) / (1.0 - s), 0.0, 1.0, 1e-14).map(|q| q.value)
    } else if x > 0.0 {
        integrate(g, 0.0, x, 1e-14).map(|q| q.value)
    } else {
        integrate(g, x, 0.0, 1e-14).map(|q| -q.value)
    }
}

const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;
const APERY: f64 = 1.202_056_903_159_594_285_399_738_161_511_449_990_765;

fn specfun_cases(out: &mut Vec<CaseResult>) {
    let grid: Vec<f64> = (-9..=9).map(|i| i as f64 / 10.0).collect();
    out.push(eq_worst(
        "specfun.atanh_addition",
        "x, y in {-0.9, -0.8, ..., 0.9}",
        1e-12,
        grid.iter().flat_map(|&x| grid.iter().map(move |&y| (x, y))).map(|(x, y)| {
            let lhs = val(atanh_eval(x)) + val(atanh_eval(y));
            let rhs = val(atanh_add_arg(x, y).and_then(atanh_eval));
            (format!("x={x} y={y}"), lhs, rhs)
        }),
    ));
    out.push(eq_worst(
        "specfun.atanh_quadrature",
        "x in {0.1, 0.5, 0.9, 0.99}",
        1e-12,
        [0.1, 0.5, 0.9, 0.99].map(|x: f64| {
            let q = integrate(|t| 1.0 / (1.0 - t * t), 0.0, x, 1e-14).map(|q| q.value);
            (format!("x={x}"), val(atanh_eval(x)), val(q))
        }),
    ));
    out.push(bound_worst(
        "specfun.atanh_upper_bound",
        "u = k/1000, k = 1..999",
        0.0,
        (1..1000).map(|k| {
            let u = k as f64 / 1000.0;
            (format!("u={u}"), u / (1.0 - u * u), val(atanh_eval(u)))
        }),
    ));
    out.push(eq_worst(
        "specfun.arctan_inversion",
        "t = 10^(j/4), j = -32..32",
        1e-14,
        powers_of_ten(-8, 8, 4)
            .into_iter()
            .map(|t| (format!("t={t:e}"), 0.0, val(arctan_inversion_residual(t)))),
    ));
    out.push(eq_worst(
        "specfun.dilog_reflection",
        "x = k/200, k = 1..199",
        1e-10,
        (1..200).map(|k| {
            let x = k as f64 / 200.0;
            (format!("x={x}"), 0.0, val(dilog_reflection_residual(x)))
        }),
    ));
    for b in [1.5, 2.0, 2.5, 3.0] {
        out.push(eq_worst(
            "specfun.li_input_squared",
            &format!("b={b}, x = k/20, k = -20..20"),
            1e-10,
            (-20..=20).map(|k| {
                let x = k as f64 / 20.0;
                let lhs = val(li(b, x)) + val(li(b, -x));
                let rhs = libm::pow(2.0, 1.0 - b) * val(li(b, x * x));
                (format!("x={x}"), lhs, rhs)
            }),
        ));
    }
    for x in [-1.0, -0.9, -0.6, 0.3, 0.7, 0.95, 1.0] {
        out.push(CaseResult::equality(
            "specfun.li2_quadrature",
            format!("x={x}"),
            val(li(2.0, x)),
            val(li2_integral(x)),
            1e-12,
        ));
    }
    for b in [1.5, 2.5, 3.0] {
        for x in [-0.9, -0.6, 0.3, 0.7, 0.95] {
            out.push(CaseResult::equality(
                "specfun.li_direct_series",
                format!("b={b} x={x}"),
                val(li(b, x)),
                brute_series(b, x, false),
                1e-13,
            ));
        }
    }
    for (b, exact) in [(2.0, PI * PI / 6.0), (3.0, APERY), (4.0, libm::pow(PI, 4.0) / 90.0)] {
        out.push(CaseResult::equality("specfun.zeta_value", format!("s={b}"), val(li(b, 1.0)), exact, 1e-15));
        out.push(CaseResult::equality("specfun.zeta_value", format!("s={b}"), zeta(b), exact, 1e-15));
    }
    out.push(CaseResult::equality(
        "specfun.li_minus_one",
        String::from("b=2 x=-1"),
        val(li(2.0, -1.0)),
        -PI * PI / 12.0,
        1e-15,
    ));
    for b in [1.5, 2.0, 3.0] {
        out.push(bound_worst(
            "specfun.li_linear_bound",
            &format!("b={b}, x = k/100, k = 1..99"),
            1e-15,
            (1..100).map(|k| {
                let x = k as f64 / 100.0;
                (format!("x={x}"), x * val(li(b, 1.0)), val(li(b, x)))
            }),
        ));
    }
    for b in [1.1, 1.5, 2.0, 3.0, 5.0] {
        out.push(CaseResult::upper_bound(
            "specfun.li_unit_bound",
            format!("b={b}: Li_b(1) <= b/(b-1)"),
            b / (b - 1.0),
            val(li(b, 1.0)),
            0.0,
        ));
        // The often-quoted Li_b(±1) < b fails for b near 1.
        out.push(
            CaseResult::upper_bound(
                "specfun.li_unit_bound_b",
                format!("b={b}: Li_b(1) < b"),
                b,
                val(li(b, 1.0)),
                0.0,
            )
            .informational(),
        );
    }
    for x in [2.0, 10.0, 100.0] {
        out.push(CaseResult::equality(
            "specfun.ti2_inversion",
            format!("x={x}"),
            val(ti2(x)),
            val(ti2(1.0 / x)) + FRAC_PI_2 * libm::log(x),
            1e-12,
        ));
    }
    for x in [0.3, 0.7, 1.0, 2.0, 10.0, 100.0] {
        let q = integrate(|t: f64| libm::atan(t) / t, 0.0, x, 1e-14).map(|q| q.value);
        out.push(CaseResult::equality(
            "specfun.ti2_quadrature",
            format!("x={x}"),
            val(ti2(x)),
            val(q),
            1e-12,
        ));
    }
    out.push(CaseResult::equality("specfun.ti2_catalan", String::from("x=1"), val(ti2(1.0)), CATALAN, 1e-15));
    let naive = |l: f64| val(ti2(l)) - libm::log(l) * libm::atan(l);
    out.push(eq_worst(
        "specfun.f_symmetry",
        "lambda = 10^(j/4), j = -16..16",
        1e-11,
        powers_of_ten(-4, 4, 4)
            .into_iter()
            .map(|l| (format!("lambda={l:e}"), naive(l), naive(1.0 / l))),
    ));
    out.push(eq_worst(
        "specfun.f_stable_form",
        "lambda = 10^(j/4), j = -16..16",
        1e-11,
        powers_of_ten(-4, 4, 4)
            .into_iter()
            .map(|l| (format!("lambda={l:e}"), val(ti2_log_atan(l)), naive(l))),
    ));
    out.push(bound_worst(
        "specfun.f_at_most_catalan",
        "lambda = 10^(j/8), j = -48..48",
        1e-15,
        powers_of_ten(-6, 6, 8)
            .into_iter()
            .map(|l| (format!("lambda={l:e}"), CATALAN, val(ti2_log_atan(l)))),
    ));
    for x in [0.3, 0.7, 0.95] {
        out.push(CaseResult::equality(
            "specfun.chi_odd_series",
            format!("b=2 x={x}"),
            val(chi(2.0, x)),
            brute_series(2.0, x, true),
            1e-13,
        ));
    }
}

fn ks_case(name: &str, input: String, ks: KsCheck) -> CaseResult {
    // The statistic must stay below its 1% critical value; no extra slack.
    CaseResult::monte_carlo(name, input, ks.critical, ks.statistic, 0.0)
}

/// Weight vectors of the 1-stability cases: dimension 1 to 8, entries
/// uniform on `(−5, 5)`.
pub fn stability_weights(seed: RngSeed, count: usize) -> Vec<Vec<f64>> {
    let mut s = seed.child(STABILITY_STREAM).stream();
    (0..count)
        .map(|_| {
            let dim = 1 + (8.0 * s.next_uniform()) as usize;
            (0..dim).map(|_| 10.0 * s.next_uniform() - 5.0).collect()
        })
        .collect()
}

fn cauchy_cases(opts: &SuiteOptions, out: &mut Vec<CaseResult>) {
    out.push(eq_worst(
        "cauchy.cdf_plus_survival",
        "t = 10^(j/4), j = -36..36",
        1e-15,
        powers_of_ten(-9, 9, 4)
            .into_iter()
            .map(|t| (format!("t={t:e}"), 1.0, val(cdf_abs(t)) + val(survival_abs(t)))),
    ));
    for t in [0.5, 1.0, 3.0, 10.0] {
        let q = integrate(|x| FRAC_2_PI / (1.0 + x * x), 0.0, t, 1e-15).map(|q| q.value);
        out.push(CaseResult::equality("cauchy.cdf_quadrature", format!("t={t}"), val(cdf_abs(t)), val(q), 1e-13));
    }
    let n = opts.mc(DEFAULT_KS_SAMPLES) as usize;
    if n == 0 {
        return;
    }
    out.push(ks_case("cauchy.abs_ks", format!("n={n}"), abs_cauchy_ks(n, opts.seed.child(KS_STREAM))));
    for (i, v) in stability_weights(opts.seed, 10).iter().enumerate() {
        let seed = opts.seed.child(STABILITY_STREAM).child(i as u64 + 1);
        match stability_ks(v, n, seed) {
            Ok((one, two)) => {
                out.push(ks_case("cauchy.stability_ks", format!("v={v:?} n={n}"), one));
                out.push(ks_case("cauchy.stability_ks_two_sample", format!("v={v:?} n={n}"), two));
            }
            Err(_) => out.push(CaseResult::equality(
                "cauchy.stability_ks",
                format!("v={v:?}"),
                0.0,
                f64::NAN,
                0.0,
            )),
        }
    }
}

fn metric_cases(opts: &SuiteOptions, out: &mut Vec<CaseResult>) {
    let grid = powers_of_ten(-6, 6, 4);
    out.push(bound_worst(
        "metric.xi_subadditive",
        "a, b = 10^(j/4), j = -24..24",
        1e-14,
        grid.iter()
            .flat_map(|&a| grid.iter().map(move |&b| (a, b)))
            .map(|(a, b)| (format!("a={a:e} b={b:e}"), val(xi(a)) + val(xi(b)), val(xi(a + b)))),
    ));
    out.push(bound_worst(
        "metric.xi_log_sandwich",
        "a = 10^(j/4), j = -24..24",
        1e-15,
        grid.iter().flat_map(|&a| {
            let x = val(xi(a));
            [
                (format!("a={a:e} upper"), 2.0 * libm::log1p(libm::sqrt(a)), x),
                (format!("a={a:e} lower"), x, libm::log1p(a)),
            ]
        }),
    ));
    let small: Vec<f64> = (1..=2000).map(|j| j as f64 / 12_001.0).collect();
    out.push(bound_worst(
        "metric.xi_small_envelope",
        "a = j/12001, j = 1..2000",
        1e-16,
        small.iter().flat_map(|&a| {
            let (lo, hi) = xi_small_envelope(a).unwrap_or((f64::NAN, f64::NAN));
            let x = val(xi(a));
            [(format!("a={a:e} lower"), x, lo), (format!("a={a:e} upper"), hi, x)]
        }),
    ));
    out.push(eq_worst(
        "metric.xi_inverse_roundtrip",
        "a = 10^(j/4), j = -24..24, relative",
        1e-12,
        grid.iter().map(|&a| (format!("a={a:e}"), 1.0, val(xi(a).and_then(xi_inverse)) / a)),
    ));
    let mut s = opts.seed.child(METRIC_STREAM).stream();
    for k in [1usize, 7, 64] {
        let mut tri = Worst::new();
        let mut sym = Worst::new();
        let mut ident = Worst::new();
        for i in 0..1000 {
            let mut draw = || -> Vec<f64> { (0..k).map(|_| 3.0 * s.next_cauchy()).collect() };
            let (u, v, w) = (draw(), draw(), draw());
            let uv = val(rho_slices(&u, &v));
            let vw = val(rho_slices(&v, &w));
            let uw = val(rho_slices(&u, &w));
            let scale = (uv + vw).max(1.0);
            tri.offer(|| format!("triple {i}"), 0.0, (uw - uv - vw) / scale, (uw - uv - vw) / scale);
            let vu = val(rho_slices(&v, &u));
            sym.offer(|| format!("triple {i}"), uv, vu, libm::fabs(uv - vu));
            let uu = val(rho_slices(&u, &u));
            ident.offer(|| format!("triple {i}"), 0.0, uu, libm::fabs(uu));
        }
        let grid = format!("1000 triples, k={k}");
        out.push(tri.bound("metric.rho_triangle", &grid, 1e-14));
        out.push(sym.equality("metric.rho_symmetry", &grid, 0.0));
        out.push(ident.equality("metric.rho_identity", &grid, 0.0));
    }
}

fn moments_cases(opts: &SuiteOptions, out: &mut Vec<CaseResult>) {
    let grid = moment_grid(opts.seed);
    for &l in &grid {
        let q = quadrature_mean(Integrand::Xi, l, ORACLE_TOL);
        out.push(CaseResult::equality("moments.mu_quadrature", format!("lambda={l:e}"), val(mu(l)), val(q), 1e-9));
    }
    for &l in &grid {
        let q = quadrature_mean(Integrand::Log1p, l, ORACLE_TOL);
        out.push(CaseResult::equality(
            "moments.expected_log1p_quadrature",
            format!("lambda={l:e}"),
            val(expected_log1p(l)),
            val(q),
            1e-8,
        ));
    }
    for &l in &grid {
        let q2 = val(quadrature_mean(Integrand::XiSquared, l, ORACLE_TOL));
        let m = val(mu(l));
        let input = format!("lambda={l:e}");
        out.push(CaseResult::upper_bound("moments.variance_bound", input.clone(), VARIANCE_CAP, q2 - m * m, 1e-9));
        out.push(CaseResult::upper_bound("moments.jensen", input.clone(), q2, m * m, 1e-12));
        out.push(CaseResult::upper_bound("moments.second_moment_upper", input, val(second_moment_upper(l)), q2, 1e-10));
    }
    for l in ratio_grid(opts.seed) {
        if l == 0.0 {
            continue;
        }
        let q2 = val(quadrature_mean(Integrand::XiSquared, l, ORACLE_TOL));
        out.push(CaseResult::upper_bound(
            "moments.second_moment_ratio",
            format!("lambda={l:e}"),
            val(second_moment_ratio_bound(l)),
            q2 / l,
            1e-10,
        ));
    }
    for l in [1e-6, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 1.0] {
        let q = val(quadrature_mean(Integrand::Xi, l, ORACLE_TOL));
        let (lo, hi) = mu_small_envelope(l).unwrap_or((f64::NAN, f64::NAN));
        out.push(CaseResult::upper_bound("moments.mu_small_envelope_lower", format!("lambda={l:e}"), q, lo, 1e-15));
        out.push(CaseResult::upper_bound("moments.mu_small_envelope_upper", format!("lambda={l:e}"), hi, q, 1e-15));
    }
    out.push(eq_worst(
        "moments.mu_prime_difference",
        "lambda = 10^(j/4), j = -12..16, relative",
        1e-7,
        powers_of_ten(-3, 4, 4).into_iter().map(|l| {
            let h = 1e-3 * l;
            let d1 = (val(mu(l + h)) - val(mu(l - h))) / (2.0 * h);
            let d2 = (val(mu(l + 2.0 * h)) - val(mu(l - 2.0 * h))) / (4.0 * h);
            let richardson = (4.0 * d1 - d2) / 3.0;
            (format!("lambda={l:e}"), 1.0, richardson / val(mu_prime(l)))
        }),
    ));
    let mut s = opts.seed.child(GRID_STREAM).child(2).stream();
    out.push(eq_worst(
        "moments.mu_inverse_roundtrip",
        "1000 log-uniform lambda in [1e-4, 1e4], relative",
        1e-10,
        (0..1000).map(|_| {
            let l = libm::pow(10.0, -4.0 + 8.0 * s.next_uniform());
            (format!("lambda={l:e}"), 1.0, val(mu(l).and_then(mu_inverse)) / l)
        }),
    ));
    for a in [1.05f64, 1.1, 1.25] {
        for l in [1.0 / libm::sqrt(a), 1.0, 5.0, 100.0] {
            let d = val(mu(a * l)) - val(mu(l));
            let input = format!("a={a} lambda={l}");
            out.push(CaseResult::upper_bound("moments.deviation_upper", input.clone(), a - 1.0, d, 1e-12));
            let lower = (a - 1.0) / 4.0 * (1.0 - (a - 1.0));
            out.push(CaseResult::upper_bound("moments.deviation_lower", input, d, lower, 1e-12));
        }
    }
    elementary_cases(out);
    let n = opts.mc(DEFAULT_KS_SAMPLES) as usize;
    if n == 0 {
        return;
    }
    for (i, (l, u)) in [(0.5, 0.1), (2.0, 0.1), (2.0, 0.3), (10.0, 0.3)].into_iter().enumerate() {
        let seed = opts.seed.child(MGF_STREAM).child(i as u64);
        let input = format!("lambda={l} u={u} n={n}");
        out.push(match mgf_split(l, u, n, seed) {
            Ok(c) => CaseResult::monte_carlo("moments.mgf_split", input, c.bound, c.empirical, c.std_error),
            Err(_) => CaseResult::monte_carlo("moments.mgf_split", input, 0.0, f64::NAN, 0.0),
        });
    }
}

fn elementary_cases(out: &mut Vec<CaseResult>) {
    let unit: Vec<f64> = (0..=1000).map(|j| j as f64 / 1000.0).collect();
    out.push(bound_worst(
        "moments.exp_small_positive",
        "t = j/1000, j = 0..1000",
        1e-15,
        unit.iter()
            .map(|&t| (format!("t={t}"), 1.0 + t + 0.5 * (E - 1.0) * t * t, libm::exp(t))),
    ));
    out.push(bound_worst(
        "moments.exp_small_negative",
        "t = -j/100, j = 0..2000",
        1e-15,
        (0..=2000).map(|j| {
            let t = -(j as f64) / 100.0;
            (format!("t={t}"), 1.0 + t + 0.5 * t * t, libm::exp(t))
        }),
    ));
    let s_grid = powers_of_ten(-2, 2, 4);
    let u_grid = powers_of_ten(-3, 1, 4);
    out.push(bound_worst(
        "moments.inverse_exponential",
        "s = 10^(j/4), j = -8..8; u = 10^(i/4), i = -12..4",
        1e-15,
        s_grid.iter().flat_map(|&s| {
            u_grid.iter().map(move |&u| {
                let c = 2.0 / (E * s);
                (format!("s={s:e} u={u:e}"), c * c * u * u, libm::exp(-s / u))
            })
        }),
    ));
    out.push(bound_worst(
        "moments.log_shift_lower",
        "t = j/100, j = 0..1000",
        1e-15,
        (0..=1000).map(|j| {
            let t = j as f64 / 100.0;
            (format!("t={t}"), libm::log1p(t), t * (1.0 - 0.5 * t))
        }),
    ));
    // Stated for all t > −1, but for −1 < t < 0 the inequality reverses.
    out.push(
        bound_worst(
            "moments.log_shift_lower_negative",
            "t = -j/100, j = 1..99",
            1e-15,
            (1..100).map(|j| {
                let t = -(j as f64) / 100.0;
                (format!("t={t}"), libm::log1p(t), t * (1.0 - 0.5 * t))
            }),
        )
        .informational(),
    );
    out.push(bound_worst(
        "moments.arctan_squared_root",
        "nu = 10^(j/4), j = -24..24",
        1e-15,
        powers_of_ten(-6, 6, 4).into_iter().map(|nu| {
            let a = libm::atan(libm::sqrt(nu));
            (format!("nu={nu:e}"), libm::log1p(nu).min(PI * PI / 4.0), a * a)
        }),
    ));
}

fn tail_grid(lambda: f64) -> Vec<f64> {
    let start = 2.0f64.min(2.0 * libm::log1p(libm::sqrt(lambda)));
    (0..=400).map(|j| start + j as f64 * (60.0 - start) / 400.0).collect()
}

fn concentration_cases(opts: &SuiteOptions, out: &mut Vec<CaseResult>) {
    for l in [1e-3, 0.1, 1.0, 10.0, 100.0, 1e4] {
        out.push(bound_worst(
            "concentration.tail_exact",
            &format!("lambda={l:e}, 401 t on the validity grid"),
            0.0,
            tail_grid(l)
                .into_iter()
                .map(|t| (format!("t={t}"), val(xi_tail_bound(l, t)), val(xi_survival(l, t)))),
        ));
        out.push(bound_worst(
            "concentration.tail_dominating",
            &format!("lambda={l:e}, 401 t on the validity grid"),
            1e-15,
            tail_grid(l)
                .into_iter()
                .map(|t| (format!("t={t}"), val(dominating_survival(l, t)), val(xi_survival(l, t)))),
        ));
    }
    for (eps, n, c) in [(0.25, 100u64, 3.0), (0.1, 1000, 3.0), (0.05, 10_000, 4.0)] {
        let input = format!("epsilon={eps} N={n} c={c}");
        match plan_dimension(eps, n, c) {
            Ok(p) => out.push(bound_worst(
                "concentration.plan_covers_rates",
                &input,
                0.0,
                p.entries.iter().map(|e| {
                    (format!("{:?}", e.branch), p.k as f64, p.log_factor * e.rate)
                }),
            )),
            Err(_) => out.push(CaseResult::upper_bound("concentration.plan_covers_rates", input, 0.0, f64::NAN, 0.0)),
        }
    }
    out.push(CaseResult::equality(
        "concentration.h_identity",
        String::from("H(e)/e = 1/e"),
        h_exponent(E) / E,
        1.0 / E,
        1e-16,
    ));
    for (k, delta) in [(100u64, 0.01), (1000, 0.001), (10, 1.0)] {
        let fb = max_abs_plan_for_delta(k, 0.25, delta).map(|p| p.failure_bound());
        out.push(CaseResult::equality(
            "concentration.max_failure_bound",
            format!("k={k} delta={delta}"),
            val(fb),
            libm::exp(-delta / E) * delta,
            1e-14 * delta,
        ));
    }

    let tail_n = opts.mc(DEFAULT_TAIL_SAMPLES) as usize;
    if tail_n > 0 {
        for (i, l) in [0.1, 1.0, 10.0].into_iter().enumerate() {
            let draws = sorted_xi_draws(l, tail_n, opts.seed.child(TAIL_STREAM).child(i as u64));
            let t0 = 2.0f64.min(2.0 * libm::log1p(libm::sqrt(l)));
            for t in [t0, t0 + 0.5, t0 + 1.0, t0 + 2.0, t0 + 4.0, t0 + 8.0] {
                let bound = val(xi_tail_bound(l, t));
                out.push(CaseResult::monte_carlo(
                    "concentration.tail_monte_carlo",
                    format!("lambda={l} t={t} n={tail_n}"),
                    bound,
                    exceedance(&draws, t),
                    binomial_se(bound, tail_n as u64),
                ));
            }
        }
    }

    let max_trials = opts.mc(DEFAULT_MAX_TRIALS);
    if max_trials > 0 {
        for (i, (k, delta)) in [(100u64, 0.01), (1000, 0.001), (10, 1.0)].into_iter().enumerate() {
            let seed = opts.seed.child(MAX_STREAM).child(i as u64);
            let input = format!("k={k} lambda=1 delta={delta} trials={max_trials}");
            out.push(match verify_max_bound(k, 1.0, delta, max_trials, seed) {
                Ok(c) => CaseResult::monte_carlo("concentration.max_bound", input, delta, c.empirical(), c.std_error),
                Err(_) => CaseResult::monte_carlo("concentration.max_bound", input, delta, f64::NAN, 0.0),
            });
        }
    }

    let trials = opts.mc(DEFAULT_CONCENTRATION_TRIALS);
    if trials > 0 {
        for (i, l) in [2.0, 0.1].into_iter().enumerate() {
            concentration_experiment(opts, i as u64, l, 0.25, trials, out);
        }
    }
}

/// Search for the empirical `k`, compare it with the planner, and confirm
/// the failure rate at that `k` on fresh streams.
fn concentration_experiment(opts: &SuiteOptions, index: u64, lambda: f64, eps: f64, trials: u64, out: &mut Vec<CaseResult>) {
    let input = format!("lambda={lambda} epsilon={eps} trials={trials}");
    let planned = plan_dimension_for_delta(eps, CONCENTRATION_TARGET).map(|p| p.k as f64);
    let search = empirical_k_search_with(
        lambda,
        eps,
        CONCENTRATION_TARGET,
        opts.seed.child(SEARCH_STREAM).child(index),
        trials,
        DEFAULT_MAX_K,
    );
    let k = match search {
        Ok(s) => s.k,
        Err(_) => {
            out.push(CaseResult::upper_bound("concentration.empirical_k", input, val(planned), f64::NAN, 0.0));
            return;
        }
    };
    out.push(CaseResult::upper_bound(
        "concentration.empirical_k",
        format!("{input} (planner k for delta=0.01)"),
        val(planned),
        k as f64,
        0.0,
    ));
    let seed = opts.seed.child(HOLDOUT_STREAM).child(index);
    let t = match run_concentration_trial(lambda, eps, k, trials, seed) {
        Ok(t) => t,
        Err(_) => {
            out.push(CaseResult::monte_carlo("concentration.holdout", input, CONCENTRATION_TARGET, f64::NAN, 0.0));
            return;
        }
    };
    let se = binomial_se(CONCENTRATION_TARGET, trials);
    let n = trials as f64;
    let input = format!("{input} k={k} fresh streams");
    if t.regime == RegimeKind::ReallySmall {
        out.push(CaseResult::monte_carlo(
            "concentration.holdout_lower",
            input.clone(),
            CONCENTRATION_TARGET,
            t.fail_lower as f64 / n,
            se,
        ));
        out.push(
            CaseResult::monte_carlo(
                "concentration.unproven_upper_tail",
                input,
                CONCENTRATION_TARGET,
                t.fail_upper as f64 / n,
                se,
            )
            .informational(),
        );
    } else {
        out.push(CaseResult::monte_carlo(
            "concentration.holdout",
            input,
            CONCENTRATION_TARGET,
            t.fail_fraction(),
            se,
        ));
    }
}

fn sketch_cases(opts: &SuiteOptions, out: &mut Vec<CaseResult>) {
    let seed = opts.seed.child(SKETCH_STREAM);
    let x = [1.0, -2.0, 0.5, 4.0];
    let y = [0.0, 1.0, 0.5, 3.5];
    let diff: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a - b).collect();
    match build_projection(64, 4, seed) {
        Ok(m) => {
            let px = project(&m, &x).map(|p| p.into_coords()).unwrap_or_default();
            let py = project(&m, &y).map(|p| p.into_coords()).unwrap_or_default();
            let pd = project(&m, &diff).map(|p| p.into_coords()).unwrap_or_default();
            out.push(eq_worst(
                "sketch.project_linear",
                "k=64 d=4",
                1e-12,
                (0..64).map(|i| {
                    let lhs = px.get(i).copied().unwrap_or(f64::NAN) - py.get(i).copied().unwrap_or(f64::NAN);
                    let rhs = pd.get(i).copied().unwrap_or(f64::NAN);
                    (format!("coordinate {i}"), lhs, rhs)
                }),
            ));
            let same = project(&m, &x).and_then(|p| estimate_l1(&p, &p));
            out.push(CaseResult::equality("sketch.identical_points", String::from("x = y"), 0.0, val(same), 0.0));
        }
        Err(_) => out.push(CaseResult::equality("sketch.project_linear", String::from("k=64 d=4"), 0.0, f64::NAN, 0.0)),
    }

    let n = opts.mc(DEFAULT_KS_SAMPLES) as usize;
    if n == 0 {
        return;
    }
    if let Ok(m) = build_projection(100, 100, seed.child(1)) {
        let mut xs: Vec<f64> = m.entries().iter().map(|e| libm::fabs(*e)).collect();
        let d = ks_one_sample(&mut xs, |t| cdf_abs(t).unwrap_or(0.0));
        out.push(ks_case(
            "sketch.projection_entries_ks",
            String::from("k=100 d=100"),
            KsCheck {
                statistic: d,
                critical: ks_critical(xs.len()),
            },
        ));
    }
    let v = [1.0, -2.0, 3.0];
    let rows = n.min(1 << 20);
    if let Ok(m) = build_projection(rows, 3, seed.child(2)) {
        let coords = project(&m, &v).map(|p| p.into_coords()).unwrap_or_default();
        let mut xs: Vec<f64> = coords.iter().map(|c| libm::fabs(*c) / 6.0).collect();
        let d = ks_one_sample(&mut xs, |t| cdf_abs(t).unwrap_or(0.0));
        out.push(ks_case(
            "sketch.projected_coordinates_ks",
            format!("v=(1,-2,3) k={rows}"),
            KsCheck {
                statistic: d,
                critical: ks_critical(xs.len()),
            },
        ));
    }
    round_trip_case(opts, out);
}

// ‖x − y‖₁ = 4 at ε = ¼: the estimate should land in [3.2, 5].
fn round_trip_case(opts: &SuiteOptions, out: &mut Vec<CaseResult>) {
    let trials = opts.mc(DEFAULT_CONCENTRATION_TRIALS);
    let x = [1.0, 0.0, -1.0, 2.0];
    let y = [0.0, 0.5, -1.5, 0.0];
    let (eps, l1) = (0.25, 4.0);
    let input = format!("|x-y|_1=4 epsilon={eps} trials={trials}");
    let k = match empirical_k_search_with(l1, eps, CONCENTRATION_TARGET, opts.seed.child(SKETCH_STREAM).child(3), trials, DEFAULT_MAX_K) {
        Ok(s) => s.k as usize,
        Err(_) => {
            out.push(CaseResult::monte_carlo("sketch.estimate_round_trip", input, CONCENTRATION_TARGET, f64::NAN, 0.0));
            return;
        }
    };
    let mut misses = 0u64;
    for t in 0..trials {
        let seed = opts.seed.child(SKETCH_STREAM).child(4).child(t);
        let est = build_projection(k, x.len(), seed).and_then(|m| estimate_l1(&project(&m, &x)?, &project(&m, &y)?));
        match est {
            Ok(e) if (l1 / (1.0 + eps)..=l1 * (1.0 + eps)).contains(&e) => {}
            _ => misses += 1,
        }
    }
    out.push(CaseResult::monte_carlo(
        "sketch.estimate_round_trip",
        format!("{input} k={k}"),
        CONCENTRATION_TARGET,
        misses as f64 / trials as f64,
        binomial_se(CONCENTRATION_TARGET, trials),
    ));
}
