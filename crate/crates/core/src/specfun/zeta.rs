//! Riemann ζ on the real line, needed by the polylogarithm expansion about 1.

use core::f64::consts::PI;

// B_{2j} / (2j)! for j = 1..=10.
const BERNOULLI_OVER_FACTORIAL: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
    43_867.0 / 5_109_094_217_170_944_000.0,
    -174_611.0 / 802_857_662_698_291_200_000.0,
];

const EM_CUT: usize = 16;

/// ζ(s) for real `s ≠ 1`. Returns `+∞` at the pole.
///
/// Euler–Maclaurin with a 16-term head for `s ≥ 0`; the functional equation
/// for `s < 0`. Even negative integers return exactly zero.
pub fn zeta(s: f64) -> f64 {
    if s.is_nan() {
        return f64::NAN;
    }
    if s == 1.0 {
        return f64::INFINITY;
    }
    if s < 0.0 {
        return zeta_negative(s);
    }
    if s >= 40.0 {
        // 1 + 2^-s + 3^-s + ...: five terms already reach 5^-40 < 1e-27.
        let mut acc = 0.0;
        for n in (1..=6).rev() {
            acc += libm::pow(n as f64, -s);
        }
        return acc;
    }
    euler_maclaurin(s)
}

fn euler_maclaurin(s: f64) -> f64 {
    let n = EM_CUT as f64;
    let mut head = 0.0;
    for j in (1..EM_CUT).rev() {
        head += libm::pow(j as f64, -s);
    }
    let n_pow = libm::pow(n, -s);
    let mut tail = n * n_pow / (s - 1.0) + 0.5 * n_pow;
    // term_j = B_{2j}/(2j)! · s(s+1)…(s+2j−2) · N^{−s−2j+1}
    let mut rising = s;
    let mut power = n_pow / n;
    for (j, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        tail += coeff * rising * power;
        let m = (2 * j + 1) as f64;
        rising *= (s + m) * (s + m + 1.0);
        power /= n * n;
    }
    head + tail
}

fn zeta_negative(s: f64) -> f64 {
    if s == libm::floor(s) && libm::fmod(s, 2.0) == 0.0 {
        return 0.0;
    }
    // sin(πs/2) with the argument reduced exactly modulo 4 before scaling by π.
    let half = libm::fmod(0.5 * s, 2.0);
    let sine = libm::sin(PI * half);
    let one_minus = 1.0 - s;
    libm::pow(2.0 * PI, s) / PI * sine * libm::tgamma(one_minus) * zeta(one_minus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn known_values() {
        assert!(close(zeta(2.0), PI * PI / 6.0, 1e-15));
        assert!(close(zeta(3.0), 1.2020569031595942, 1e-15));
        assert!(close(zeta(4.0), PI.powi(4) / 90.0, 1e-15));
        assert!(close(zeta(0.0), -0.5, 1e-15));
        assert!(close(zeta(-1.0), -1.0 / 12.0, 1e-15));
        assert!(close(zeta(-3.0), 1.0 / 120.0, 1e-14));
        assert_eq!(zeta(-2.0), 0.0);
        assert_eq!(zeta(-10.0), 0.0);
    }

    #[test]
    fn non_integer_values_match_frozen_oracle() {
        assert!(close(zeta(2.5), 1.3414872572509172, 1e-15));
        assert!(close(zeta(0.5), -1.4603545088095868, 1e-14));
        assert!(close(zeta(-1.5), -0.025485201889833036, 1e-13));
    }

    #[test]
    fn branch_switch_is_continuous() {
        assert!(close(zeta(39.999999), zeta(40.0), 1e-12));
        assert!(zeta(1.0).is_infinite());
    }
}
