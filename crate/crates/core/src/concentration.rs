//! Tail bounds, Chernoff rate reciprocals and target-dimension planning.
//!
//! A *rate reciprocal* `R` is the factor in `k = ⌈ln(2/δ) · R⌉`: with `k`
//! coordinates the probability that `ρ` leaves its band on one side is at
//! most `δ/2`. The planner takes the maximum over every scale regime so the
//! band holds for all pairs at once.

use alloc::vec::Vec;
use core::f64::consts::{E, FRAC_2_PI, PI, SQRT_2};

use crate::error::{domain, Error, Result};
use crate::metric::xi_inverse;
use crate::moments::{
    check_epsilon, deviations, mu_unchecked, second_moment_ratio_bound, VARIANCE_CAP,
};

/// Rounded constant in the small-scale upper rate.
pub const SMALL_UPPER_CONSTANT: f64 = 3.126;

/// `32e / (3π(e−1)²) ≈ 3.12597`, the exact value that [`SMALL_UPPER_CONSTANT`] rounds up.
pub fn small_upper_constant_exact() -> f64 {
    32.0 * E / (3.0 * PI * (E - 1.0) * (E - 1.0))
}

// A₊ and A₋ for the large-scale rates.
const A_PLUS_LARGE: f64 = 64.0 * PI / (E * (PI * PI - 0.5));
const A_MINUS_LARGE: f64 = 8.0 * PI * PI * SQRT_2 / (E * PI * (PI * PI - 0.25));

/// Which side of the band a bound controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Side {
    /// `ρ` exceeding its upper band edge.
    Upper,
    /// `ρ` falling below its lower band edge.
    Lower,
}

/// Coarse classification of a scale `λ = ‖x − y‖₁` relative to ε.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum RegimeKind {
    /// `λ ≥ √(1+ε)`: band `[μ(λ/(1+ε)), μ((1+ε)λ)]`.
    Large,
    /// `8ε² < λ < √(1+ε)`: band `(1 ± ε) μ(λ)`.
    Small,
    /// `λ ≤ 8ε²`: lower tail only, via the maximum of the draws.
    ReallySmall,
}

/// A scale together with its regime.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScaleRegime {
    /// Regime of `lambda`.
    pub kind: RegimeKind,
    /// The scale.
    pub lambda: f64,
    /// The ε used for the split.
    pub epsilon: f64,
}

impl ScaleRegime {
    /// Classify `λ ≥ 0` for `0 < ε ≤ ¼`.
    pub fn classify(lambda: f64, epsilon: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        if !(lambda >= 0.0) || lambda.is_infinite() {
            return Err(domain("ScaleRegime lambda", lambda));
        }
        let kind = if lambda >= libm::sqrt(1.0 + epsilon) {
            RegimeKind::Large
        } else if lambda > 8.0 * epsilon * epsilon {
            RegimeKind::Small
        } else {
            RegimeKind::ReallySmall
        };
        Ok(Self {
            kind,
            lambda,
            epsilon,
        })
    }

    /// Whether an upper-tail guarantee exists at this scale.
    pub fn upper_tail_proven(&self) -> bool {
        self.kind != RegimeKind::ReallySmall
    }

    /// The `(lower, upper)` band on `ρ` that concentration targets here.
    pub fn band(&self) -> (f64, f64) {
        let (l, e) = (self.lambda, self.epsilon);
        match self.kind {
            RegimeKind::Large => (mu_unchecked(l / (1.0 + e)), mu_unchecked((1.0 + e) * l)),
            RegimeKind::Small | RegimeKind::ReallySmall => {
                let m = mu_unchecked(l);
                ((1.0 - e) * m, (1.0 + e) * m)
            }
        }
    }
}

/// `C₁(λ) = (2/π) λ / (1 − 1/e)²`.
pub fn tail_c1(lambda: f64) -> f64 {
    let d = 1.0 - 1.0 / E;
    FRAC_2_PI * lambda / (d * d)
}

/// `C₂(λ) = (2/π)(1 + √λ)`.
pub fn tail_c2(lambda: f64) -> f64 {
    FRAC_2_PI * (1.0 + libm::sqrt(lambda))
}

/// Upper bound on `P{ξ(λ|X|) > t}`.
///
/// `C₁(λ)e^{−t}` applies for `t ≥ 2` and `C₂(λ)e^{−t/2}` for
/// `t ≥ 2 ln(1 + √λ)`; the smaller applicable value is returned, capped at 1.
pub fn xi_tail_bound(lambda: f64, t: f64) -> Result<f64> {
    if !(lambda > 0.0) || lambda.is_infinite() {
        return Err(domain("xi_tail_bound lambda", lambda));
    }
    if t.is_nan() {
        return Err(domain("xi_tail_bound t", t));
    }
    let mut best = f64::INFINITY;
    if t >= 2.0 {
        best = tail_c1(lambda) * libm::exp(-t);
    }
    if t >= 2.0 * libm::log1p(libm::sqrt(lambda)) {
        best = best.min(tail_c2(lambda) * libm::exp(-0.5 * t));
    }
    if best.is_infinite() {
        return Err(domain("xi_tail_bound t (no validity region)", t));
    }
    Ok(best.min(1.0))
}

/// `P{2 ln(1 + √(λ|X|)) > t} = (2/π) atan(λ / (e^{t/2} − 1)²)` for `t > 0`,
/// the exact tail of the variable that dominates `ξ(λ|X|)`.
pub fn dominating_survival(lambda: f64, t: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(domain("dominating_survival lambda", lambda));
    }
    if !(t > 0.0) {
        return Err(domain("dominating_survival t", t));
    }
    let d = libm::expm1(0.5 * t);
    Ok(FRAC_2_PI * libm::atan(lambda / (d * d)))
}

/// Exact `P{ξ(λ|X|) > t}` for `t ≥ 0`.
pub fn xi_survival(lambda: f64, t: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(domain("xi_survival lambda", lambda));
    }
    let a = xi_inverse(t)?;
    if a == 0.0 {
        return Ok(1.0);
    }
    Ok(FRAC_2_PI * libm::atan(lambda / a))
}

/// Rate reciprocal at large scales; independent of λ inside the regime
/// (`λ > 1/√(1+ε)` upper, `λ ≥ √(1+ε)` lower).
pub fn chernoff_rate_large(epsilon: f64, side: Side) -> Result<f64> {
    check_epsilon(epsilon)?;
    let lead = 64.0 / (epsilon * epsilon * (1.0 - epsilon) * (1.0 - epsilon));
    let a = match side {
        Side::Upper => A_PLUS_LARGE,
        Side::Lower => A_MINUS_LARGE,
    };
    Ok(lead * (VARIANCE_CAP + a))
}

/// Rate reciprocal at small scales.
///
/// The upper side needs `8ε² < λ ≤ 1`; the lower side accepts `0 < λ ≤ 2`.
pub fn chernoff_rate_small(epsilon: f64, lambda: f64, side: Side) -> Result<f64> {
    check_epsilon(epsilon)?;
    if !(lambda > 0.0) {
        return Err(domain("chernoff_rate_small lambda", lambda));
    }
    match side {
        Side::Upper => {
            if !(lambda > 8.0 * epsilon * epsilon && lambda <= 1.0) {
                return Err(Error::Regime("small-scale upper tail needs 8ε² < λ ≤ 1"));
            }
        }
        Side::Lower => {
            if lambda > 2.0 {
                return Err(Error::Regime("small-scale lower tail needs λ ≤ 2"));
            }
        }
    }
    Ok(small_rate_unchecked(epsilon, lambda, side))
}

fn small_rate_unchecked(epsilon: f64, lambda: f64, side: Side) -> f64 {
    let e2 = epsilon * epsilon;
    let log_part = 1.0 + 4.0 / PI - 4.0 / PI * libm::log(lambda) + 8.0 + 2.0 * SQRT_2 + 0.25;
    match side {
        Side::Upper => 8.0 / e2 * (SMALL_UPPER_CONSTANT + log_part),
        Side::Lower if lambda <= 1.0 => 4.0 / e2 * log_part,
        Side::Lower => 9.0 / e2 * (VARIANCE_CAP + 4.0 + 2.0 * SQRT_2),
    }
}

/// Rate for one side at one scale, or a marker where no bound is proven.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TailRate {
    /// A proven rate reciprocal.
    Proven(f64),
    /// Upper tail at `λ ≤ 8ε²`: no guarantee exists.
    Unproven,
}

impl TailRate {
    /// The rate, if proven.
    pub fn value(self) -> Option<f64> {
        match self {
            Self::Proven(r) => Some(r),
            Self::Unproven => None,
        }
    }
}

/// Best proven rate reciprocals at a single scale.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScaleRates {
    /// Regime of the scale.
    pub regime: ScaleRegime,
    /// Upper-tail rate.
    pub upper: TailRate,
    /// Lower-tail rate (always proven for `λ > 0`).
    pub lower: f64,
}

/// Smallest applicable rate on each side at scale `λ > 0`.
pub fn rates_at_scale(lambda: f64, epsilon: f64) -> Result<ScaleRates> {
    let regime = ScaleRegime::classify(lambda, epsilon)?;
    if lambda == 0.0 {
        return Err(domain("rates_at_scale lambda", lambda));
    }
    let root = libm::sqrt(1.0 + epsilon);
    let mut upper = f64::INFINITY;
    if lambda > 1.0 / root {
        upper = chernoff_rate_large(epsilon, Side::Upper)?;
    }
    if lambda > 8.0 * epsilon * epsilon && lambda <= 1.0 {
        upper = upper.min(small_rate_unchecked(epsilon, lambda, Side::Upper));
    }
    let mut lower = f64::INFINITY;
    if lambda >= root {
        lower = chernoff_rate_large(epsilon, Side::Lower)?;
    }
    if lambda <= 2.0 {
        lower = lower.min(small_rate_unchecked(epsilon, lambda, Side::Lower));
    }
    Ok(ScaleRates {
        regime,
        upper: if upper.is_finite() {
            TailRate::Proven(upper)
        } else {
            TailRate::Unproven
        },
        lower,
    })
}

/// The bound behind each planner entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PlanBranch {
    /// Upper tail, `λ > 1/√(1+ε)`.
    LargeUpper,
    /// Lower tail, `λ ≥ √(1+ε)`.
    LargeLower,
    /// Upper tail, `8ε² < λ ≤ 1`, evaluated at the worst scale `8ε²`.
    SmallUpper,
    /// Lower tail, `λ ≤ 1`, evaluated at `8ε²`.
    SmallLower,
    /// Lower tail, `1 < λ ≤ 2`.
    SmallLowerMid,
    /// Lower tail at `λ₀`, which covers every `λ ≤ 8ε²` by ½-homogeneity.
    ReallySmallLower,
}

/// One rate reciprocal considered by the planner.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RateEntry {
    /// Which bound.
    pub branch: PlanBranch,
    /// Side of the band.
    pub side: Side,
    /// Scale at which a λ-dependent rate was evaluated.
    pub lambda: Option<f64>,
    /// Rate reciprocal.
    pub rate: f64,
    /// Chernoff optimizer `u*` (an upper bound on it for the large branches).
    pub u_star: f64,
    /// Strict cap the optimizer must respect, if the bound needs one.
    pub u_cap: Option<f64>,
}

/// Output of [`plan_dimension`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChernoffPlan {
    /// ε.
    pub epsilon: f64,
    /// Number of points `N`, when planned from `(N, c)`.
    pub n_points: Option<u64>,
    /// Exponent `c`, when planned from `(N, c)`.
    pub c: Option<f64>,
    /// Per-side failure budget `δ`.
    pub delta_fail: f64,
    /// `ln(2/δ)`.
    pub log_factor: f64,
    /// Every rate considered, in a fixed order.
    pub entries: Vec<RateEntry>,
    /// Branch attaining the maximum rate.
    pub attained: PlanBranch,
    /// Largest upper-side rate.
    pub rate_reciprocal_upper: f64,
    /// Largest lower-side rate.
    pub rate_reciprocal_lower: f64,
    /// `u*` of the binding upper-side entry.
    pub u_star_upper: f64,
    /// `u*` of the binding lower-side entry.
    pub u_star_lower: f64,
    /// `λ₀ = ε²πδ/(8ke)` at the final `k`.
    pub lambda0: f64,
    /// Below this scale (`8ε²`) no upper-tail guarantee exists.
    pub unproven_upper_below: f64,
    /// Fixed-point iterations used.
    pub iterations: u32,
    /// Target dimension.
    pub k: u64,
}

impl ChernoffPlan {
    /// Largest rate over all entries.
    pub fn max_rate(&self) -> f64 {
        self.entries.iter().map(|e| e.rate).fold(0.0, f64::max)
    }
}

const PLAN_MAX_ITERATIONS: u32 = 64;
// 2^64 as f64; anything at or above cannot be a u64.
const U64_LIMIT: f64 = 18_446_744_073_709_551_616.0;

/// Plan `k` for `N` points with failure budget `δ = N^{−c}`.
///
/// Requires `N ≥ 2`, `c ≥ 3` and `N^{−c} ≤ ε ≤ ¼`. The comparison with
/// `N^{−c}` allows a relative slack of `1e−12` so that `ε = N^{−c}` written
/// in decimal is admitted.
pub fn plan_dimension(epsilon: f64, n_points: u64, c: f64) -> Result<ChernoffPlan> {
    if n_points < 2 {
        return Err(Error::Infeasible("need at least two points"));
    }
    if !(c >= 3.0) || c.is_infinite() {
        return Err(Error::Infeasible("c must be a finite number ≥ 3"));
    }
    if !(epsilon > 0.0 && epsilon <= 0.25) {
        return Err(Error::Infeasible("ε must lie in (0, 1/4]"));
    }
    let delta = libm::exp(-c * libm::log(n_points as f64));
    if epsilon < delta * (1.0 - 1e-12) {
        return Err(Error::Infeasible("ε must be at least N^(-c)"));
    }
    let mut plan = plan_dimension_for_delta(epsilon, delta)?;
    plan.n_points = Some(n_points);
    plan.c = Some(c);
    Ok(plan)
}

/// Plan `k` for an explicit per-side failure budget `δ ∈ (0, 1)`.
pub fn plan_dimension_for_delta(epsilon: f64, delta: f64) -> Result<ChernoffPlan> {
    if !(epsilon > 0.0 && epsilon <= 0.25) {
        return Err(Error::Infeasible("ε must lie in (0, 1/4]"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Infeasible("δ must lie in (0, 1)"));
    }
    let log_factor = libm::log(2.0 / delta);
    let floor = 8.0 * epsilon * epsilon;

    let mut entries = Vec::with_capacity(6);
    for (branch, side) in [
        (PlanBranch::LargeUpper, Side::Upper),
        (PlanBranch::LargeLower, Side::Lower),
    ] {
        let (rate, cap) = match side {
            Side::Upper => (chernoff_rate_large(epsilon, side)?, 0.5),
            Side::Lower => (chernoff_rate_large(epsilon, side)?, 1.0),
        };
        entries.push(RateEntry {
            branch,
            side,
            lambda: None,
            rate,
            u_star: large_u_star_bound(epsilon, side),
            u_cap: Some(cap),
        });
    }
    entries.push(RateEntry {
        branch: PlanBranch::SmallUpper,
        side: Side::Upper,
        lambda: Some(floor),
        rate: small_rate_unchecked(epsilon, floor, Side::Upper),
        u_star: small_u_star(epsilon, floor, Side::Upper),
        u_cap: Some(0.25),
    });
    entries.push(RateEntry {
        branch: PlanBranch::SmallLower,
        side: Side::Lower,
        lambda: Some(floor),
        rate: small_rate_unchecked(epsilon, floor, Side::Lower),
        u_star: small_u_star(epsilon, floor, Side::Lower),
        u_cap: None,
    });
    entries.push(RateEntry {
        branch: PlanBranch::SmallLowerMid,
        side: Side::Lower,
        lambda: Some(2.0),
        rate: small_rate_unchecked(epsilon, 2.0, Side::Lower),
        u_star: small_u_star(epsilon, 2.0, Side::Lower),
        u_cap: None,
    });
    let fixed_max = entries.iter().map(|e| e.rate).fold(0.0, f64::max);

    let lambda0_of = |k: f64| epsilon * epsilon * PI * delta / (8.0 * k * E);
    let mut k = libm::ceil(log_factor * entries[0].rate);
    let mut iterations = 0;
    let k = loop {
        if k >= U64_LIMIT {
            return Err(Error::DimensionOverflow(k));
        }
        let tiny = small_rate_unchecked(epsilon, lambda0_of(k), Side::Lower);
        let next = libm::ceil(log_factor * fixed_max.max(tiny));
        iterations += 1;
        if next == k {
            break k;
        }
        if iterations >= PLAN_MAX_ITERATIONS {
            return Err(Error::NonConvergence("dimension fixed point"));
        }
        k = next;
    };
    if k >= U64_LIMIT {
        return Err(Error::DimensionOverflow(k));
    }
    let lambda0 = lambda0_of(k);
    entries.push(RateEntry {
        branch: PlanBranch::ReallySmallLower,
        side: Side::Lower,
        lambda: Some(lambda0),
        rate: small_rate_unchecked(epsilon, lambda0, Side::Lower),
        u_star: small_u_star(epsilon, lambda0, Side::Lower),
        u_cap: None,
    });

    let binding = |side: Side| {
        entries
            .iter()
            .filter(|e| e.side == side)
            .fold(None::<&RateEntry>, |best, e| match best {
                Some(b) if b.rate >= e.rate => Some(b),
                _ => Some(e),
            })
            .copied()
            .expect("both sides have entries")
    };
    let up = binding(Side::Upper);
    let lo = binding(Side::Lower);
    let attained = if up.rate >= lo.rate { up.branch } else { lo.branch };

    Ok(ChernoffPlan {
        epsilon,
        n_points: None,
        c: None,
        delta_fail: delta,
        log_factor,
        attained,
        rate_reciprocal_upper: up.rate,
        rate_reciprocal_lower: lo.rate,
        u_star_upper: up.u_star,
        u_star_lower: lo.u_star,
        entries,
        lambda0,
        unproven_upper_below: floor,
        iterations,
        k: k as u64,
    })
}

// u* = Δ/(2(V² + A)) with V² = π²/2 and Δ < ε.
fn large_u_star_bound(epsilon: f64, side: Side) -> f64 {
    let a = match side {
        Side::Upper => A_PLUS_LARGE,
        Side::Lower => A_MINUS_LARGE,
    };
    epsilon / (2.0 * (VARIANCE_CAP + a))
}

/// Chernoff optimizer at a small scale, with `V² = λ · (ratio bound)`.
///
/// Upper: `εμ/(2(V² + A₊(λ)))` with `A₊(λ) = 3.126 λ`. Lower: `εμ/V²`.
pub fn small_u_star(epsilon: f64, lambda: f64, side: Side) -> f64 {
    let v2 = lambda * second_moment_ratio_bound(lambda.min(2.0)).unwrap_or(f64::INFINITY);
    let m = mu_unchecked(lambda);
    match side {
        Side::Upper => epsilon * m / (2.0 * (v2 + SMALL_UPPER_CONSTANT * lambda)),
        Side::Lower => epsilon * m / v2,
    }
}

/// Large-scale optimizer `Δ/(2(π²/2 + A))` using the actual deviation at `λ`.
pub fn large_u_star(lambda: f64, epsilon: f64, side: Side) -> Result<f64> {
    let d = deviations(lambda, epsilon)?;
    let (delta, a) = match side {
        Side::Upper => (d.delta_plus, A_PLUS_LARGE),
        Side::Lower => (d.delta_minus, A_MINUS_LARGE),
    };
    Ok(delta / (2.0 * (VARIANCE_CAP + a)))
}

/// `H(x) = x ln x + 1 − x`, the Chernoff–Hoeffding exponent.
pub fn h_exponent(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    x * libm::log(x) + 1.0 - x
}

/// Parameters controlling `max_i |X_i|` over `k` draws.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MaxBoundPlan {
    /// Number of draws.
    pub k: u64,
    /// Failure budget.
    pub delta: f64,
    /// `C_k = e/δ`.
    pub c_k: f64,
    /// `α = C_k`.
    pub alpha: f64,
    /// `p_t = 1/(k C_k)`.
    pub p_t: f64,
    /// Threshold per unit scale: `λ max|X_i| ≤ λ · threshold_per_lambda`
    /// except with probability `e^{−δ/e} δ`.
    pub threshold_per_lambda: f64,
    /// `λ₀ = ε²πδ/(8ke)`.
    pub lambda0: f64,
    /// `c₀ = ε²/4 = λ₀ · threshold_per_lambda`.
    pub c0: f64,
    /// ε.
    pub epsilon: f64,
}

impl MaxBoundPlan {
    /// `exp(−H(α) k p_t) = e^{−δ/e} δ`.
    pub fn failure_bound(&self) -> f64 {
        libm::exp(-h_exponent(self.alpha) * self.k as f64 * self.p_t)
    }

    /// Planned threshold on `λ max|X_i|` at scale `λ`.
    pub fn threshold(&self, lambda: f64) -> f64 {
        lambda * self.threshold_per_lambda
    }

    /// Band multipliers `((1−ε)(1−4ε²), (1+ε)(1+4ε²))` on `μ(λ)` for
    /// `0 < λ ≤ λ₀`.
    pub fn corollary_band(&self, lambda: f64) -> Result<(f64, f64)> {
        if !(lambda > 0.0 && lambda <= self.lambda0) {
            return Err(domain("corollary_band lambda", lambda));
        }
        Ok(corollary_band(self.epsilon))
    }
}

/// `((1−ε)(1−4ε²), (1+ε)(1+4ε²))`.
pub fn corollary_band(epsilon: f64) -> (f64, f64) {
    let s = 4.0 * epsilon * epsilon;
    ((1.0 - epsilon) * (1.0 - s), (1.0 + epsilon) * (1.0 + s))
}

/// [`MaxBoundPlan`] for `k` draws with `δ = N^{−c}`.
pub fn max_abs_plan(k: u64, epsilon: f64, n_points: u64, c: f64) -> Result<MaxBoundPlan> {
    if n_points < 1 || !(c > 0.0) {
        return Err(Error::Infeasible("max_abs_plan needs N ≥ 1 and c > 0"));
    }
    let delta = libm::exp(-c * libm::log(n_points as f64));
    max_abs_plan_for_delta(k, epsilon, delta)
}

/// [`MaxBoundPlan`] for an explicit `δ ∈ (0, 1]`.
pub fn max_abs_plan_for_delta(k: u64, epsilon: f64, delta: f64) -> Result<MaxBoundPlan> {
    if k == 0 {
        return Err(domain("max_abs_plan k", 0.0));
    }
    if !(epsilon > 0.0) {
        return Err(domain("max_abs_plan epsilon", epsilon));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(domain("max_abs_plan delta", delta));
    }
    let kf = k as f64;
    let c_k = E / delta;
    Ok(MaxBoundPlan {
        k,
        delta,
        c_k,
        alpha: c_k,
        p_t: 1.0 / (kf * c_k),
        threshold_per_lambda: 2.0 * kf * c_k / PI,
        lambda0: epsilon * epsilon * PI * delta / (8.0 * kf * E),
        c0: epsilon * epsilon / 4.0,
        epsilon,
    })
}
