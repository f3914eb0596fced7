//! Real-valued special functions: `atanh`, polylogarithms `Li_b`, the inverse
//! tangent integral `Ti₂` and Legendre's `χ_b`.
//!
//! Every routine rejects NaN and out-of-domain arguments with
//! [`Error::Domain`](crate::Error::Domain) instead of propagating them.
//!
//! Evaluation strategy by zone (see [`EvalDomain`]):
//!
//! | zone | `Li_b` | `Ti₂` |
//! |------|--------|-------|
//! | `\|x\| ≤ ½` | power series | power series |
//! | `½ < x < 1` | expansion in `ln x` with ζ coefficients | accelerated alternating series |
//! | `−1 ≤ x < −½` | accelerated alternating series | - |
//! | `x = 1` | `ζ(b)` | accelerated alternating series |
//! | `x > 1` | - | `Ti₂(1/x) + (π/2) ln x` |
//!
//! The acceleration is the Cohen–Rodriguez Villegas–Zagier scheme, which
//! applies because both coefficient sequences are moment sequences.

mod zeta;

pub use zeta::zeta;

use core::f64::consts::{FRAC_PI_2, PI};

use crate::error::{domain, Result};

const SERIES_RTOL: f64 = 1e-17;
const SERIES_MAX_TERMS: usize = 400;
const ALTERNATING_TERMS: usize = 36;
// Above this order the plain power series converges fast even at |x| = 1.
const LARGE_ORDER: f64 = 20.0;

/// Evaluation zone of a real argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum EvalDomain {
    /// `|x| ≤ ½`: direct summation.
    SeriesDisk,
    /// `½ < |x| ≤ 1`: the argument is carried to the boundary point `±1`
    /// (expansion about `x = 1`, or acceleration of the alternating series).
    ReflectionZone,
    /// `|x| > 1`: only `Ti₂` is defined here, via `x ↦ 1/x`.
    InversionZone,
}

impl EvalDomain {
    /// Zone containing `x`. NaN is placed in [`EvalDomain::InversionZone`].
    pub fn of(x: f64) -> Self {
        let a = libm::fabs(x);
        if a <= 0.5 {
            Self::SeriesDisk
        } else if a <= 1.0 {
            Self::ReflectionZone
        } else {
            Self::InversionZone
        }
    }

    /// Upper edge of `|x|` for this zone; the zones tile `[0, ∞]`.
    pub fn boundary(self) -> f64 {
        match self {
            Self::SeriesDisk => 0.5,
            Self::ReflectionZone => 1.0,
            Self::InversionZone => f64::INFINITY,
        }
    }
}

/// `atanh(x) = ½(ln(1+x) − ln(1−x))` for `|x| < 1`.
pub fn atanh_eval(x: f64) -> Result<f64> {
    if !(x > -1.0 && x < 1.0) {
        return Err(domain("atanh_eval", x));
    }
    let a = libm::fabs(x);
    let r = 0.5 * libm::log1p(2.0 * a / (1.0 - a));
    Ok(libm::copysign(r, x))
}

/// The argument `(x + y)/(1 + xy)` with `atanh(x) + atanh(y) = atanh(result)`.
pub fn atanh_add_arg(x: f64, y: f64) -> Result<f64> {
    if !(x > -1.0 && x < 1.0) {
        return Err(domain("atanh_add_arg x", x));
    }
    if !(y > -1.0 && y < 1.0) {
        return Err(domain("atanh_add_arg y", y));
    }
    Ok((x + y) / (1.0 + x * y))
}

/// Polylogarithm `Li_b(x) = Σ_{j≥1} x^j / j^b` for real order `b > 0` and
/// `−1 ≤ x ≤ 1`.
///
/// At `|x| = 1` the order must exceed 1. Arguments below `−1` are rejected
/// even though `Li_b` continues there; nothing in this crate needs them.
pub fn li(b: f64, x: f64) -> Result<f64> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(domain("li order", b));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(domain("li argument", x));
    }
    if libm::fabs(x) == 1.0 && b <= 1.0 {
        return Err(domain("li order at |x| = 1", b));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if libm::fabs(x) <= 0.5 || b >= LARGE_ORDER {
        return Ok(power_series(b, x));
    }
    if x == 1.0 {
        return Ok(zeta(b));
    }
    if x > 0.0 {
        return Ok(log_expansion(b, libm::log(x)));
    }
    let y = -x;
    Ok(-alternating_sum(|k| {
        let j = (k + 1) as f64;
        libm::pow(y, j) / libm::pow(j, b)
    }))
}

fn power_series(b: f64, x: f64) -> f64 {
    let mut sum = 0.0;
    let mut p = 1.0;
    for j in 1..=SERIES_MAX_TERMS {
        p *= x;
        let term = p / libm::pow(j as f64, b);
        sum += term;
        if libm::fabs(term) <= SERIES_RTOL * libm::fabs(sum) {
            break;
        }
    }
    sum
}

// Li_b(e^m) for m < 0:
//   non-integer b: Γ(1−b)(−m)^{b−1} + Σ_k ζ(b−k) m^k/k!
//   integer n:     Σ_{k≠n−1} ζ(n−k) m^k/k! + m^{n−1}/(n−1)! (H_{n−1} − ln(−m))
fn log_expansion(b: f64, m: f64) -> f64 {
    let n = libm::round(b);
    let integer = b == n;
    let singular = if integer { Some(n as usize - 1) } else { None };
    let mut sum = if integer {
        0.0
    } else {
        libm::tgamma(1.0 - b) * libm::pow(-m, b - 1.0)
    };
    let mut harmonic = 0.0;
    let mut mk = 1.0; // m^k / k!
    let mut quiet = 0;
    for k in 0..SERIES_MAX_TERMS {
        let term = if Some(k) == singular {
            mk * (harmonic - libm::log(-m))
        } else {
            zeta(b - k as f64) * mk
        };
        sum += term;
        if (k as f64) > b + 1.0 && libm::fabs(term) <= SERIES_RTOL * libm::fabs(sum) {
            // ζ vanishes at even negative integers, so one small term proves nothing.
            quiet += 1;
            if quiet == 2 {
                break;
            }
        } else {
            quiet = 0;
        }
        harmonic += 1.0 / (k + 1) as f64;
        mk *= m / (k + 1) as f64;
    }
    sum
}

// Σ_{k≥0} (−1)^k a_k for a moment sequence a_k.
fn alternating_sum(a: impl Fn(usize) -> f64) -> f64 {
    let n = ALTERNATING_TERMS;
    let nf = n as f64;
    let mut d = libm::pow(3.0 + libm::sqrt(8.0), nf);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut s = 0.0;
    for k in 0..n {
        let kf = k as f64;
        c = b - c;
        s += c * a(k);
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    s / d
}

/// `Li₂(x) + Li₂(1−x) − Li₂(1) + ln(x) ln(1−x)`, identically zero on `(0, 1)`.
pub fn dilog_reflection_residual(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(domain("dilog_reflection_residual", x));
    }
    let lhs = li(2.0, x)? + li(2.0, 1.0 - x)? - zeta(2.0);
    Ok(lhs + libm::log(x) * libm::log1p(-x))
}

/// Inverse tangent integral `Ti₂(x) = Σ_{j≥0} (−1)^j x^{2j+1}/(2j+1)²` for `x ≥ 0`.
pub fn ti2(x: f64) -> Result<f64> {
    if !(x >= 0.0) || x.is_infinite() {
        return Err(domain("ti2", x));
    }
    Ok(ti2_unchecked(x))
}

fn ti2_unchecked(x: f64) -> f64 {
    if x > 1.0 {
        return ti2_unchecked(1.0 / x) + FRAC_PI_2 * libm::log(x);
    }
    if x <= 0.5 {
        let x2 = x * x;
        let mut p = x;
        let mut sum = 0.0;
        for j in 0..SERIES_MAX_TERMS {
            let d = (2 * j + 1) as f64;
            let term = p / (d * d);
            sum += if j % 2 == 0 { term } else { -term };
            if term <= SERIES_RTOL * libm::fabs(sum) {
                break;
            }
            p *= x2;
        }
        return sum;
    }
    alternating_sum(|k| {
        let d = (2 * k + 1) as f64;
        libm::pow(x, d) / (d * d)
    })
}

/// `f(λ) = Ti₂(λ) − ln(λ) atan(λ)`, evaluated without the cancellation the
/// naive difference suffers for large `λ`. `f(0) = 0`.
///
/// `f(λ) = f(1/λ)` and `0 < f(λ) ≤ f(1) = G` (Catalan's constant).
pub fn ti2_log_atan(lambda: f64) -> Result<f64> {
    if !(lambda >= 0.0) || lambda.is_infinite() {
        return Err(domain("ti2_log_atan", lambda));
    }
    if lambda == 0.0 {
        return Ok(0.0);
    }
    let (t, l) = if lambda > 1.0 {
        (1.0 / lambda, -libm::log(lambda))
    } else {
        (lambda, libm::log(lambda))
    };
    Ok(ti2_unchecked(t) - l * libm::atan(t))
}

/// Legendre chi `χ_b(x) = ½(Li_b(x) − Li_b(−x))` for `|x| < 1`, `b > 0`.
pub fn chi(b: f64, x: f64) -> Result<f64> {
    if !(x > -1.0 && x < 1.0) {
        return Err(domain("chi argument", x));
    }
    Ok(0.5 * (li(b, x)? - li(b, -x)?))
}

/// `atan(t) + atan(1/t) − π/2` for `t > 0`; zero up to rounding.
pub fn arctan_inversion_residual(t: f64) -> Result<f64> {
    if !(t > 0.0) || t.is_infinite() {
        return Err(domain("arctan_inversion_residual", t));
    }
    Ok(libm::atan(t) + libm::atan(1.0 / t) - PI / 2.0)
}
