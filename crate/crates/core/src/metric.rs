//! The target-space metric `ρ` built from the coordinate function `ξ`.

use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::sum::Neumaier;

/// Above this many coordinates `ρ` is accumulated with compensated summation.
pub const COMPENSATED_THRESHOLD: usize = 10_000;

/// Image of a point under the projection: `k ≥ 1` finite coordinates.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SketchedPoint {
    coords: Vec<f64>,
}

impl SketchedPoint {
    /// Wrap coordinates, rejecting an empty vector or non-finite entries.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if let Some(&bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(domain("sketch coordinate", bad));
        }
        Ok(Self { coords })
    }

    /// Number of coordinates `k`.
    pub fn k(&self) -> usize {
        self.coords.len()
    }

    /// The coordinates.
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Release the coordinate vector.
    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }
}

/// `ξ(a) = ln(1 + √a) + ½ ln(1 + a)` for `a ≥ 0`.
///
/// Strictly increasing and concave with `ξ(0) = 0`, and
/// `ln(1 + a) ≤ ξ(a) ≤ 2 ln(1 + √a)`.
pub fn xi(a: f64) -> Result<f64> {
    if !(a >= 0.0) {
        return Err(domain("xi", a));
    }
    Ok(xi_unchecked(a))
}

#[inline]
pub(crate) fn xi_unchecked(a: f64) -> f64 {
    libm::log1p(libm::sqrt(a)) + 0.5 * libm::log1p(a)
}

/// Inverse of [`xi`]: the `a ≥ 0` with `ξ(a) = t`.
pub fn xi_inverse(t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(domain("xi_inverse", t));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    if t.is_infinite() {
        return Ok(f64::INFINITY);
    }
    // In s = √a the equation is ln(1+s) + ½ln(1+s²) = t, with s ∈ [lo, hi]:
    // the left side lies between ln(1+s) and 2ln(1+s).
    let mut lo = libm::expm1(0.5 * t);
    let mut hi = libm::expm1(t);
    let mut s = 0.5 * (lo + hi);
    for _ in 0..200 {
        let g = libm::log1p(s) + 0.5 * libm::log1p(s * s) - t;
        if g > 0.0 {
            hi = s;
        } else {
            lo = s;
        }
        let dg = 1.0 / (1.0 + s) + s / (1.0 + s * s);
        let mut next = s - g / dg;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if libm::fabs(next - s) <= 1e-16 * s || hi - lo <= 1e-16 * hi {
            s = next;
            break;
        }
        s = next;
    }
    Ok(s * s)
}

/// `(√a, √a (1 + a/2))`, which bracket `ξ(a)` for `0 < a < 1/6`.
pub fn xi_small_envelope(a: f64) -> Result<(f64, f64)> {
    if !(a > 0.0 && a < 1.0 / 6.0) {
        return Err(domain("xi_small_envelope", a));
    }
    let r = libm::sqrt(a);
    Ok((r, r * (1.0 + 0.5 * a)))
}

/// `ρ(u, v) = (1/k) Σ ξ(|u_i − v_i|)`.
pub fn rho(u: &SketchedPoint, v: &SketchedPoint) -> Result<f64> {
    rho_slices(u.coords(), v.coords())
}

/// [`rho`] on raw coordinate slices. Both slices must be non-empty and of
/// equal length.
pub fn rho_slices(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    if u.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    let terms = u.iter().zip(v).map(|(a, b)| xi_unchecked(libm::fabs(a - b)));
    let total = if u.len() > COMPENSATED_THRESHOLD {
        let mut acc = Neumaier::default();
        terms.for_each(|t| acc.add(t));
        acc.value()
    } else {
        terms.sum()
    };
    Ok(total / u.len() as f64)
}
