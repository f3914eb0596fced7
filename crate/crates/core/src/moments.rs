//! Moments of `ξ(λ|X|)` for standard Cauchy `X` as functions of the scale `λ`.

use core::f64::consts::{FRAC_2_PI, PI};

use crate::error::{domain, Result};
use crate::specfun::ti2_log_atan;

/// `π²/2`, the uniform bound on `Var ξ(λ|X|)`.
pub const VARIANCE_CAP: f64 = PI * PI / 2.0;

/// Closed-form moments at one scale.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MomentProfile {
    /// The scale `λ = ‖x − y‖₁`.
    pub lambda: f64,
    /// `μ(λ) = E ξ(λ|X|)`.
    pub mu: f64,
    /// `E ln(1 + λ|X|)`.
    pub log_mean: f64,
    /// Upper bound `V²` on `E ξ²(λ|X|)`.
    pub second_moment_upper: f64,
    /// Upper bound on the variance, never above `π²/2`.
    pub variance_upper: f64,
    /// Bracket on `μ(λ)` from [`mu_small_envelope`], present for `λ ≤ 1`.
    pub small_envelope: Option<(f64, f64)>,
}

impl MomentProfile {
    /// Evaluate every closed form at `lambda > 0`.
    pub fn at(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || lambda.is_infinite() {
            return Err(domain("MomentProfile lambda", lambda));
        }
        let mu = mu(lambda)?;
        let log_mean = expected_log1p(lambda)?;
        let variance_upper = (2.0 * log_mean).min(VARIANCE_CAP);
        Ok(Self {
            lambda,
            mu,
            log_mean,
            second_moment_upper: variance_upper + mu * mu,
            variance_upper,
            small_envelope: if lambda <= 1.0 {
                Some(mu_small_envelope(lambda)?)
            } else {
                None
            },
        })
    }
}

/// Band widths `Δ₊ = μ((1+ε)λ) − μ(λ)` and `Δ₋ = μ(λ) − μ(λ/(1+ε))`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DeviationPair {
    /// `Δ₊`.
    pub delta_plus: f64,
    /// `Δ₋`.
    pub delta_minus: f64,
    /// The ε used.
    pub epsilon: f64,
}

// ½ ln(1 + λ²) without overflow for huge λ.
fn half_log1p_sq(lambda: f64) -> f64 {
    if lambda <= 1.0 {
        0.5 * libm::log1p(lambda * lambda)
    } else {
        libm::log(lambda) + 0.5 * libm::log1p(1.0 / (lambda * lambda))
    }
}

fn check_scale(what: &'static str, lambda: f64) -> Result<()> {
    if lambda >= 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(domain(what, lambda))
    }
}

/// `μ(λ) = atanh(√(2λ)/(1+λ)) + ½ ln(1+λ²)` for finite `λ ≥ 0`.
pub fn mu(lambda: f64) -> Result<f64> {
    check_scale("mu", lambda)?;
    Ok(mu_unchecked(lambda))
}

pub(crate) fn mu_unchecked(lambda: f64) -> f64 {
    // g ≤ 1/√2, so the atanh argument never approaches 1.
    let g = libm::sqrt(2.0 * lambda) / (1.0 + lambda);
    0.5 * libm::log1p(2.0 * g / (1.0 - g)) + half_log1p_sq(lambda)
}

/// `μ'(λ) = ((1−λ)/√(2λ) + λ) / (1+λ²)` for `λ > 0`.
pub fn mu_prime(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) || lambda.is_infinite() {
        return Err(domain("mu_prime", lambda));
    }
    Ok(mu_prime_unchecked(lambda))
}

fn mu_prime_unchecked(lambda: f64) -> f64 {
    ((1.0 - lambda) / libm::sqrt(2.0 * lambda) + lambda) / (1.0 + lambda * lambda)
}

/// The `λ ≥ 0` with `μ(λ) = m`.
///
/// Safeguarded Newton inside a bracket built from `√(λ/2) ≤ μ(λ)` (for
/// `λ ≤ 1`), `ln λ < μ(λ)` and `μ(λ) ≤ atanh(1/√2) + ln(1+λ)`. Steps that
/// leave the bracket fall back to bisection, geometric when the bracket
/// excludes zero.
pub fn mu_inverse(m: f64) -> Result<f64> {
    if !(m >= 0.0) {
        return Err(domain("mu_inverse", m));
    }
    if m == 0.0 {
        return Ok(0.0);
    }
    if m.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let mut hi = if 2.0 * m * m < 1.0 {
        2.0 * m * m
    } else {
        libm::exp(m)
    };
    let mut lo = libm::expm1(m - 0.881_373_587_019_543_1).max(0.0);
    if m <= 16.0 {
        lo = lo.max(m * m / 32.0);
    }
    if hi.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let mut x = if m < 1.0 { 0.5 * m * m } else { libm::exp(m) };
    x = x.clamp(lo, hi);
    for _ in 0..200 {
        let f = mu_unchecked(x) - m;
        if f == 0.0 {
            return Ok(x);
        }
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let mut next = x - f / mu_prime_unchecked(x);
        if !(next > lo && next < hi) {
            next = if lo > 0.0 {
                libm::sqrt(lo * hi)
            } else {
                0.5 * hi
            };
        }
        if libm::fabs(next - x) <= 4.0 * f64::EPSILON * x {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

/// Bracket `(√(2λ)/(1+λ), √(2λ)/(1+λ)·(1 + 2λ/(1+λ²)) + λ²/2)` on `μ(λ)`
/// for `0 < λ ≤ 1`.
pub fn mu_small_envelope(lambda: f64) -> Result<(f64, f64)> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(domain("mu_small_envelope", lambda));
    }
    let lower = libm::sqrt(2.0 * lambda) / (1.0 + lambda);
    let upper = lower * (1.0 + 2.0 * lambda / (1.0 + lambda * lambda)) + 0.5 * lambda * lambda;
    Ok((lower, upper))
}

/// `Δ±` at scale `λ > 0` for `0 < ε ≤ ¼`.
pub fn deviations(lambda: f64, epsilon: f64) -> Result<DeviationPair> {
    if !(lambda > 0.0) || lambda.is_infinite() {
        return Err(domain("deviations lambda", lambda));
    }
    check_epsilon(epsilon)?;
    let m = mu_unchecked(lambda);
    Ok(DeviationPair {
        delta_plus: mu_unchecked((1.0 + epsilon) * lambda) - m,
        delta_minus: m - mu_unchecked(lambda / (1.0 + epsilon)),
        epsilon,
    })
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon <= 0.25 {
        Ok(())
    } else {
        Err(domain("epsilon", epsilon))
    }
}

/// `E ln(1 + λ|X|) = ½ ln(1+λ²) + (2/π)(Ti₂(λ) − ln(λ) atan(λ))`, with value
/// 0 at `λ = 0`.
pub fn expected_log1p(lambda: f64) -> Result<f64> {
    check_scale("expected_log1p", lambda)?;
    Ok(half_log1p_sq(lambda) + FRAC_2_PI * ti2_log_atan(lambda)?)
}

/// `V² = min(2 E ln(1+λ|X|), π²/2) + μ(λ)²`, an upper bound on `E ξ²(λ|X|)`.
pub fn second_moment_upper(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) || lambda.is_infinite() {
        return Err(domain("second_moment_upper", lambda));
    }
    let m = mu_unchecked(lambda);
    Ok((2.0 * expected_log1p(lambda)?).min(VARIANCE_CAP) + m * m)
}

/// Piecewise upper bound on `E ξ²(λ|X|) / λ` for `0 < λ ≤ 2`.
pub fn second_moment_ratio_bound(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda <= 2.0) {
        return Err(domain("second_moment_ratio_bound", lambda));
    }
    let l = lambda;
    let cube = l * l * l / 4.0;
    if l <= 1.0 {
        let four_pi = 4.0 / PI;
        Ok(l + four_pi - four_pi * libm::log(l)
            + 8.0 / ((1.0 + l) * (1.0 + l))
            + 2.0 * l * libm::sqrt(2.0 * l) / (1.0 + l)
            + cube)
    } else {
        Ok(VARIANCE_CAP + 2.0 + l * core::f64::consts::SQRT_2 + cube)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // mpmath, 40 digits: (λ, μ, E ln(1+λ|X|), E ξ²)
    pub(crate) const ORACLE: [(f64, f64, f64, f64); 9] = [
        (1e-4, 0.014141669190927884, 6.500154543150449e-4, 8.202482492362893e-4),
        (0.01, 0.14099714114844968, 0.035732571257201151, 0.052653338399653878),
        (0.1, 0.43645563284216774, 0.21466806749580211, 0.37679490417299807),
        (0.5, 0.91629073187415507, 0.62634149942942947, 1.3419679088902937),
        (1.0, 1.2279471772995157, 0.92969539834161021, 2.2173960713046813),
        (2.0, 1.6094379124341004, 1.3194886799893748, 3.5384523418625250),
        (10.0, 2.7390407258362134, 2.5172531604898478, 9.0203637083330226),
        (100.0, 4.7461673271365410, 4.6409027572452925, 24.611933115382302),
        (1e4, 9.2244820411671106, 9.2109903874304978, 87.514974138539227),
    ];

    #[test]
    fn closed_forms_match_frozen_oracle() {
        for (l, m, el, m2) in ORACLE {
            assert!((mu(l).unwrap() - m).abs() <= 4e-16 * m.max(1.0), "mu({l})");
            assert!((expected_log1p(l).unwrap() - el).abs() <= 2e-15 * el.max(1.0), "elog({l})");
            let v2 = second_moment_upper(l).unwrap();
            assert!(m2 <= v2, "V²({l}) = {v2} < {m2}");
            assert!(m2 - m * m <= VARIANCE_CAP);
            if l <= 2.0 {
                assert!(m2 / l <= second_moment_ratio_bound(l).unwrap());
            }
        }
    }

    #[test]
    fn named_examples() {
        assert_eq!(mu(0.0).unwrap(), 0.0);
        assert_eq!(expected_log1p(0.0).unwrap(), 0.0);
        assert!(mu(-1.0).is_err());
        assert!(expected_log1p(-1e-9).is_err());
        assert!(second_moment_upper(0.0).is_err());

        let g = libm::sqrt(0.02) / 1.01;
        let m = mu(0.01).unwrap();
        assert!(g <= m && m <= g * (1.0 + 0.02 / 1.0001) + 5e-5);

        let v = second_moment_upper(1.0).unwrap();
        assert!((v - 3.3672450669210683).abs() < 1e-14);
        let m100 = mu(100.0).unwrap();
        assert_eq!(second_moment_upper(100.0).unwrap(), VARIANCE_CAP + m100 * m100);
        assert!(second_moment_upper(1e-12).unwrap() < 1e-9);
    }

    #[test]
    fn ratio_bound_examples() {
        assert!((second_moment_ratio_bound(1.0).unwrap() - 5.937453107108258).abs() < 1e-14);
        assert!((second_moment_ratio_bound(2.0).unwrap() - 11.763229325290869).abs() < 1e-14);
        assert!((second_moment_ratio_bound(0.01).unwrap() - 14.99189340392174).abs() < 1e-13);
        assert!(second_moment_ratio_bound(2.0001).is_err());
        assert!(second_moment_ratio_bound(0.0).is_err());
    }

    #[test]
    fn small_envelope_examples() {
        let (lo, hi) = mu_small_envelope(1.0).unwrap();
        assert!((lo - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-16);
        assert!((hi - (core::f64::consts::SQRT_2 + 0.5)).abs() < 1e-15);
        let (lo, hi) = mu_small_envelope(1e-4).unwrap();
        assert!((lo - 0.0141407).abs() < 1e-7);
        assert!((hi - (0.0141435 + 5e-9)).abs() < 1e-7);
        let m = mu(0.5).unwrap();
        let (lo, hi) = mu_small_envelope(0.5).unwrap();
        assert!(lo <= m && m <= hi);
        assert!(mu_small_envelope(1.5).is_err());
    }

    #[test]
    fn deviation_examples() {
        let d = deviations(2.0, 0.25).unwrap();
        for delta in [d.delta_plus, d.delta_minus] {
            assert!((0.046875..0.25).contains(&delta));
        }
        let d = deviations(1.0, 1e-9).unwrap();
        assert!(d.delta_plus < 1e-8 && d.delta_minus < 1e-8);
        assert!(deviations(1.0, 0.3).is_err());
        assert!(deviations(0.0, 0.1).is_err());
    }

    #[test]
    fn mu_inverse_examples() {
        assert_eq!(mu_inverse(0.0).unwrap(), 0.0);
        for l in [2.0, 1e-4, 1e-12, 1.0, 1e6, 1e150] {
            let back = mu_inverse(mu(l).unwrap()).unwrap();
            assert!((back / l - 1.0).abs() < 1e-10, "{l} -> {back}");
        }
        assert!(mu_inverse(-0.1).is_err());
    }

    #[test]
    fn profile_is_consistent() {
        let p = MomentProfile::at(1.0).unwrap();
        assert!(p.mu > 0.0);
        assert!(p.mu * p.mu <= p.second_moment_upper);
        assert!(p.variance_upper <= VARIANCE_CAP);
        assert!(p.small_envelope.is_some());
        assert!(MomentProfile::at(3.0).unwrap().small_envelope.is_none());
        assert!(MomentProfile::at(0.0).is_err());
    }

    proptest! {
        #[test]
        fn mu_round_trip(e in -8.0f64..8.0) {
            let l = libm::pow(10.0, e);
            let m = mu(l).unwrap();
            let back = mu_inverse(m).unwrap();
            prop_assert!((mu(back).unwrap() / m - 1.0).abs() <= 1e-10);
            prop_assert!((back / l - 1.0).abs() <= 1e-9);
        }

        #[test]
        fn mu_prime_matches_difference(e in -4.0f64..4.0) {
            let l = libm::pow(10.0, e);
            let h = l * 1e-6;
            let fd = (mu(l + h).unwrap() - mu(l - h).unwrap()) / (2.0 * h);
            prop_assert!((mu_prime(l).unwrap() / fd - 1.0).abs() < 1e-7);
            prop_assert!(mu_prime(l).unwrap() > 0.0);
        }

        #[test]
        fn small_envelope_brackets(l in 1e-12f64..=1.0) {
            let (lo, hi) = mu_small_envelope(l).unwrap();
            let m = mu(l).unwrap();
            prop_assert!(lo <= m && m <= hi);
        }

        #[test]
        fn jensen_and_positivity(e in -6.0f64..6.0) {
            let l = libm::pow(10.0, e);
            let p = MomentProfile::at(l).unwrap();
            prop_assert!(p.log_mean > 0.0);
            prop_assert!(p.mu * p.mu <= p.second_moment_upper);
        }

        #[test]
        fn deviation_sandwich(ai in 0usize..3, e in -0.2f64..3.0) {
            let a = [1.05, 1.1, 1.25][ai];
            let l = libm::pow(10.0, e).max(1.0 / libm::sqrt(a));
            let d = mu(a * l).unwrap() - mu(l).unwrap();
            prop_assert!(d < a - 1.0);
            prop_assert!(d >= (a - 1.0) / 4.0 * (2.0 - a));
        }
    }
}
