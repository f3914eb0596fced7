//! Seeded Monte Carlo experiments.
//!
//! Trial `t` of every experiment draws from `seed.child(t)`, so experiments
//! that share a seed see the same randomness (common random numbers).

use alloc::vec;
use alloc::vec::Vec;

use crate::cauchy::{cdf_abs, stable_combination, CauchyStream, RngSeed};
use crate::concentration::{max_abs_plan_for_delta, RegimeKind, ScaleRegime};
use crate::error::{domain, Error, Result};
use crate::metric::xi_unchecked;
use crate::moments::{mu_unchecked, second_moment_upper};

use super::stats::{binomial_se, ks_critical, ks_critical_two_sample, ks_one_sample, ks_two_sample};

/// Trials per candidate `k` in [`empirical_k_search`].
pub const DEFAULT_SEARCH_TRIALS: u64 = 1000;

/// Largest `k` [`empirical_k_search`] will consider.
pub const DEFAULT_MAX_K: u64 = 1 << 22;

/// Failure counts of `(1/k) Σ ξ(λ|X_i|)` against the regime band at `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConcentrationTrial {
    /// Scale.
    pub lambda: f64,
    /// Band half-width parameter.
    pub epsilon: f64,
    /// Draws per trial.
    pub k: u64,
    /// Number of trials.
    pub trials: u64,
    /// Trials whose mean exceeded the band.
    pub fail_upper: u64,
    /// Trials whose mean fell below the band.
    pub fail_lower: u64,
    /// Regime of `lambda`, which selects the band.
    pub regime: RegimeKind,
    /// `(lower, upper)` band edges.
    pub band: (f64, f64),
}

impl ConcentrationTrial {
    /// Combined failure fraction.
    pub fn fail_fraction(&self) -> f64 {
        (self.fail_upper + self.fail_lower) as f64 / self.trials as f64
    }
}

fn check_scale(lambda: f64, epsilon: f64) -> Result<ScaleRegime> {
    if !(lambda > 0.0) {
        return Err(domain("concentration lambda", lambda));
    }
    ScaleRegime::classify(lambda, epsilon)
}

/// Simulate `trials` independent means of `k` draws of `ξ(λ|X|)` and count
/// exits from the regime band.
pub fn run_concentration_trial(
    lambda: f64,
    epsilon: f64,
    k: u64,
    trials: u64,
    seed: RngSeed,
) -> Result<ConcentrationTrial> {
    let regime = check_scale(lambda, epsilon)?;
    if k == 0 {
        return Err(domain("concentration k", 0.0));
    }
    let (lo, hi) = regime.band();
    let (mut fail_upper, mut fail_lower) = (0, 0);
    for t in 0..trials {
        let mut s = seed.child(t).stream();
        let mut sum = 0.0;
        for _ in 0..k {
            sum += xi_unchecked(lambda * libm::fabs(s.next_cauchy()));
        }
        let m = sum / k as f64;
        if m > hi {
            fail_upper += 1;
        } else if m < lo {
            fail_lower += 1;
        }
    }
    Ok(ConcentrationTrial {
        lambda,
        epsilon,
        k,
        trials,
        fail_upper,
        fail_lower,
        regime: regime.kind,
        band: (lo, hi),
    })
}

// Running means of every trial, extended lazily, with failure counts
// recorded at each k reached so far.
struct Tracker {
    lambda: f64,
    band: (f64, f64),
    streams: Vec<CauchyStream>,
    sums: Vec<f64>,
    upper: Vec<u32>,
    lower: Vec<u32>,
}

impl Tracker {
    fn new(lambda: f64, band: (f64, f64), trials: u64, seed: RngSeed) -> Self {
        Self {
            lambda,
            band,
            streams: (0..trials).map(|t| seed.child(t).stream()).collect(),
            sums: vec![0.0; trials as usize],
            upper: Vec::new(),
            lower: Vec::new(),
        }
    }

    fn cap(&self) -> u64 {
        self.upper.len() as u64
    }

    fn extend_to(&mut self, k: u64) {
        let from = self.cap();
        if k <= from {
            return;
        }
        self.upper.resize(k as usize, 0);
        self.lower.resize(k as usize, 0);
        let (lo, hi) = self.band;
        for (s, sum) in self.streams.iter_mut().zip(self.sums.iter_mut()) {
            for j in from..k {
                *sum += xi_unchecked(self.lambda * libm::fabs(s.next_cauchy()));
                let m = *sum / (j + 1) as f64;
                if m > hi {
                    self.upper[j as usize] += 1;
                } else if m < lo {
                    self.lower[j as usize] += 1;
                }
            }
        }
    }

    fn failures(&self, k: u64) -> (u64, u64) {
        let i = (k - 1) as usize;
        (self.upper[i] as u64, self.lower[i] as u64)
    }
}

/// Outcome of [`empirical_k_search_with`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KSearch {
    /// Smallest `k` found with failure fraction at most the target.
    pub k: u64,
    /// The trial at that `k`.
    pub trial: ConcentrationTrial,
    /// Every `(k, failures)` pair evaluated by the search, in order.
    pub probes: Vec<(u64, u64)>,
}

/// [`empirical_k_search_with`] at [`DEFAULT_SEARCH_TRIALS`] trials and
/// [`DEFAULT_MAX_K`].
pub fn empirical_k_search(lambda: f64, epsilon: f64, target_fail: f64, seed: RngSeed) -> Result<u64> {
    empirical_k_search_with(lambda, epsilon, target_fail, seed, DEFAULT_SEARCH_TRIALS, DEFAULT_MAX_K)
        .map(|s| s.k)
}

/// Smallest `k` whose failure fraction over `trials` seeded trials is at
/// most `target_fail`, found by doubling then bisection.
///
/// All candidates share the same trial streams, and a trial's draws for
/// `k` are a prefix of its draws for any larger `k`. The counts for every
/// `k` up to the largest doubling step are therefore recorded in a single
/// pass and the bisection reads them back.
pub fn empirical_k_search_with(
    lambda: f64,
    epsilon: f64,
    target_fail: f64,
    seed: RngSeed,
    trials: u64,
    max_k: u64,
) -> Result<KSearch> {
    let regime = check_scale(lambda, epsilon)?;
    if !(target_fail > 0.0 && target_fail <= 0.1) {
        return Err(domain("empirical_k_search target_fail", target_fail));
    }
    if trials == 0 || trials > u32::MAX as u64 {
        return Err(domain("empirical_k_search trials", trials as f64));
    }
    let band = regime.band();
    let mut tracker = Tracker::new(lambda, band, trials, seed);
    let allowed = libm::floor(target_fail * trials as f64) as u64;
    let mut probes = Vec::new();
    let mut probe = |tracker: &Tracker, k: u64| {
        let (u, l) = tracker.failures(k);
        probes.push((k, u + l));
        u + l <= allowed
    };

    let mut hi = 1;
    loop {
        if hi > max_k {
            return Err(Error::SearchBudget(max_k));
        }
        tracker.extend_to(hi);
        if probe(&tracker, hi) {
            break;
        }
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if probe(&tracker, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (fail_upper, fail_lower) = tracker.failures(hi);
    Ok(KSearch {
        k: hi,
        trial: ConcentrationTrial {
            lambda,
            epsilon,
            k: hi,
            trials,
            fail_upper,
            fail_lower,
            regime: regime.kind,
            band,
        },
        probes,
    })
}

/// Empirical exceedance of the planned maximum threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MaxBoundCheck {
    /// Draws per trial.
    pub k: u64,
    /// Scale.
    pub lambda: f64,
    /// Failure budget, the bound being tested.
    pub delta: f64,
    /// Threshold on `λ max|X_i|`.
    pub threshold: f64,
    /// Number of trials.
    pub trials: u64,
    /// Trials exceeding the threshold.
    pub exceedances: u64,
    /// Binomial standard error at `p = δ`.
    pub std_error: f64,
}

impl MaxBoundCheck {
    /// Empirical exceedance probability.
    pub fn empirical(&self) -> f64 {
        self.exceedances as f64 / self.trials as f64
    }

    /// Whether the empirical probability is within `δ + 3·SE`.
    pub fn pass(&self) -> bool {
        self.empirical() <= self.delta + super::stats::MC_SIGMAS * self.std_error
    }
}

/// Estimate `P{λ max_{i≤k} |X_i| > t}` at the threshold planned for
/// `(k, δ)`.
pub fn verify_max_bound(k: u64, lambda: f64, delta: f64, trials: u64, seed: RngSeed) -> Result<MaxBoundCheck> {
    if !(lambda > 0.0) {
        return Err(domain("verify_max_bound lambda", lambda));
    }
    if trials == 0 {
        return Err(domain("verify_max_bound trials", 0.0));
    }
    // ε only enters λ₀, which is not used here.
    let plan = max_abs_plan_for_delta(k, 0.25, delta)?;
    let threshold = plan.threshold(lambda);
    let mut exceedances = 0;
    for t in 0..trials {
        let mut s = seed.child(t).stream();
        let mut m: f64 = 0.0;
        for _ in 0..k {
            m = m.max(libm::fabs(s.next_cauchy()));
        }
        if lambda * m > threshold {
            exceedances += 1;
        }
    }
    Ok(MaxBoundCheck {
        k,
        lambda,
        delta,
        threshold,
        trials,
        exceedances,
        std_error: binomial_se(delta, trials),
    })
}

/// `n` draws of `ξ(λ|X|)`, sorted ascending.
pub fn sorted_xi_draws(lambda: f64, n: usize, seed: RngSeed) -> Vec<f64> {
    let mut s = seed.stream();
    let mut xs: Vec<f64> = (0..n)
        .map(|_| xi_unchecked(lambda * libm::fabs(s.next_cauchy())))
        .collect();
    xs.sort_unstable_by(f64::total_cmp);
    xs
}

/// Fraction of `sorted` strictly above `t`.
pub fn exceedance(sorted: &[f64], t: f64) -> f64 {
    let at_most = sorted.partition_point(|&x| x <= t);
    (sorted.len() - at_most) as f64 / sorted.len() as f64
}

/// A KS statistic next to its 1% critical value.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KsCheck {
    /// The statistic.
    pub statistic: f64,
    /// Its 1% critical value.
    pub critical: f64,
}

impl KsCheck {
    /// Whether the statistic is below the critical value.
    pub fn pass(&self) -> bool {
        self.statistic < self.critical
    }
}

/// One-sample KS of `n` draws of `|X|` against the law of `|X|`.
pub fn abs_cauchy_ks(n: usize, seed: RngSeed) -> KsCheck {
    let mut s = seed.stream();
    let mut xs: Vec<f64> = (0..n).map(|_| libm::fabs(s.next_cauchy())).collect();
    KsCheck {
        statistic: ks_one_sample(&mut xs, cdf_abs_total),
        critical: ks_critical(n),
    }
}

/// KS checks of 1-stability for weights `v`: `n` draws of
/// `|Σ v_j X_j| / ‖v‖₁`, against the law of `|X|` (one-sample) and against
/// `n` direct draws of `|X|` from an independent stream (two-sample).
pub fn stability_ks(v: &[f64], n: usize, seed: RngSeed) -> Result<(KsCheck, KsCheck)> {
    let norm: f64 = v.iter().map(|w| libm::fabs(*w)).sum();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(domain("stability_ks weight norm", norm));
    }
    let mut s = seed.child(0).stream();
    let mut xs = Vec::with_capacity(n);
    for _ in 0..n {
        xs.push(libm::fabs(stable_combination(v, &mut s)?) / norm);
    }
    let mut r = seed.child(1).stream();
    let mut ys: Vec<f64> = (0..n).map(|_| libm::fabs(r.next_cauchy())).collect();
    let one = KsCheck {
        statistic: ks_one_sample(&mut xs, cdf_abs_total),
        critical: ks_critical(n),
    };
    let two = KsCheck {
        statistic: ks_two_sample(&mut xs, &mut ys),
        critical: ks_critical_two_sample(n, n),
    };
    Ok((one, two))
}

fn cdf_abs_total(t: f64) -> f64 {
    cdf_abs(t).unwrap_or(0.0)
}

/// Empirical `E exp(uY) 1{uY ≤ 1}` for `Y = ξ(λ|X|)` beside the bound
/// `1 + u μ(λ) + u² V²(λ)` built from the closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MgfSplitCheck {
    /// Empirical truncated moment generating function.
    pub empirical: f64,
    /// Standard error of `empirical`.
    pub std_error: f64,
    /// The closed-form bound.
    pub bound: f64,
}

/// Monte Carlo check of the truncated moment generating function bound at
/// `0 < u < 1`.
pub fn mgf_split(lambda: f64, u: f64, n: usize, seed: RngSeed) -> Result<MgfSplitCheck> {
    if !(u > 0.0 && u < 1.0) {
        return Err(domain("mgf_split u", u));
    }
    let v2 = second_moment_upper(lambda)?;
    let mut s = seed.stream();
    let mut xs = Vec::with_capacity(n);
    for _ in 0..n {
        let y = xi_unchecked(lambda * libm::fabs(s.next_cauchy()));
        xs.push(if u * y <= 1.0 { libm::exp(u * y) } else { 0.0 });
    }
    let (empirical, std_error) = super::stats::mean_and_se(&xs);
    Ok(MgfSplitCheck {
        empirical,
        std_error,
        bound: 1.0 + u * mu_unchecked(lambda) + u * u * v2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SEED: RngSeed = RngSeed::new(0x5eed, 3);

    #[test]
    fn degenerate_k_fails_often() {
        let t = run_concentration_trial(1.0, 0.25, 1, 2000, SEED).unwrap();
        assert!(t.fail_upper + t.fail_lower <= t.trials);
        assert!(t.fail_fraction() > 0.5);
    }

    #[test]
    fn search_agrees_with_direct_trial() {
        let s = empirical_k_search_with(2.0, 0.25, 0.05, SEED, 200, 1 << 16).unwrap();
        let t = run_concentration_trial(2.0, 0.25, s.k, 200, SEED).unwrap();
        assert_eq!(t, s.trial);
        assert!(t.fail_fraction() <= 0.05);
        if s.k > 1 {
            let below = run_concentration_trial(2.0, 0.25, s.k - 1, 200, SEED).unwrap();
            assert!(below.fail_fraction() > 0.05);
        }
    }

    #[test]
    fn search_budget_and_domain() {
        assert_eq!(
            empirical_k_search_with(2.0, 0.25, 0.01, SEED, 50, 8),
            Err(Error::SearchBudget(8))
        );
        assert!(empirical_k_search(2.0, 0.25, 0.2, SEED).is_err());
        assert!(empirical_k_search(2.0, 0.3, 0.01, SEED).is_err());
        assert!(run_concentration_trial(0.0, 0.25, 10, 10, SEED).is_err());
    }

    #[test]
    fn vacuous_max_bound() {
        let c = verify_max_bound(10, 1.0, 1.0, 100, SEED).unwrap();
        assert!(c.pass());
    }

    #[test]
    fn max_threshold_formula() {
        let c = verify_max_bound(100, 2.0, 0.01, 10, SEED).unwrap();
        let t = 2.0 * core::f64::consts::FRAC_2_PI * 100.0 * core::f64::consts::E / 0.01;
        assert!((c.threshold - t).abs() <= 1e-12 * t);
    }

    #[test]
    fn exceedance_counts_strictly_above() {
        let xs = [1.0, 2.0, 2.0, 3.0];
        assert_eq!(exceedance(&xs, 2.0), 0.25);
        assert_eq!(exceedance(&xs, 0.0), 1.0);
    }

    #[test]
    fn stability_for_simple_weights() {
        let (one, two) = stability_ks(&[1.0, -2.0, 3.0], 20_000, SEED).unwrap();
        assert!(one.pass(), "{one:?}");
        assert!(two.pass(), "{two:?}");
        assert!(stability_ks(&[0.0], 10, SEED).is_err());
    }

    #[test]
    fn mgf_split_holds() {
        let c = mgf_split(2.0, 0.3, 20_000, SEED).unwrap();
        assert!(c.empirical <= c.bound);
    }
}
