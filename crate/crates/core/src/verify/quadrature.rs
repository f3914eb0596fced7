//! Globally adaptive 21-point Gauss–Kronrod quadrature.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::FRAC_2_PI;

use crate::error::{domain, Error, Result};
use crate::metric::xi_unchecked;
use crate::sum::Neumaier;

/// Smallest tolerance accepted by [`quadrature_mean`].
pub const MIN_TOLERANCE: f64 = 1e-13;

/// Default cap on the number of panels before giving up.
pub const DEFAULT_PANEL_BUDGET: usize = 20_000;

// Geometric refinement toward a singular endpoint: panels of relative width
// 2^-1, 2^-2, ..., 2^-GEOMETRIC_LEVELS, plus the remainder.
const GEOMETRIC_LEVELS: i32 = 48;

// Kronrod abscissae on [-1, 1] (nonnegative half). Odd indices are the
// embedded 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    /// Estimated integral.
    pub value: f64,
    /// Estimated absolute error.
    pub error: f64,
    /// Number of panels in the final partition.
    pub panels: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    // Part of `error` attributable to rounding; bisection cannot reduce it.
    floor: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut resabs = libm::fabs(kronrod);
    let mut fv = [(0.0, 0.0); 10];
    for (j, slot) in fv.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let (f1, f2) = (f(center - dx), f(center + dx));
        kronrod += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (libm::fabs(f1) + libm::fabs(f2));
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
        *slot = (f1, f2);
    }
    let mean = 0.5 * kronrod;
    let mut resasc = WGK[10] * libm::fabs(fc - mean);
    for (j, &(f1, f2)) in fv.iter().enumerate() {
        resasc += WGK[j] * (libm::fabs(f1 - mean) + libm::fabs(f2 - mean));
    }
    let h = libm::fabs(half);
    let (value, resabs, resasc) = (kronrod * half, resabs * h, resasc * h);
    let mut error = libm::fabs((kronrod - gauss) * half);
    if resasc != 0.0 && error != 0.0 {
        error = resasc * libm::pow(200.0 * error / resasc, 1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(floor);
    }
    if !value.is_finite() {
        error = f64::INFINITY;
    }
    Panel {
        a,
        b,
        value,
        error,
        floor,
    }
}

/// Integrate `f` over the partition given by the sorted `breaks`, bisecting
/// the worst panel until the summed error estimate is at most `tol`.
///
/// Once the estimate is dominated by the rounding floor of the panels,
/// further refinement cannot help and the routine stops there too; the
/// returned error then exceeds `tol`.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    breaks: &[f64],
    tol: f64,
    max_panels: usize,
) -> Result<Quadrature> {
    if breaks.len() < 2 {
        return Err(Error::NonConvergence("quadrature needs at least one panel"));
    }
    if !(tol > 0.0) {
        return Err(domain("quadrature tolerance", tol));
    }
    let mut heap = BinaryHeap::with_capacity(max_panels.max(breaks.len()) + 1);
    for w in breaks.windows(2) {
        if !(w[0] < w[1]) {
            return Err(domain("quadrature breakpoints", w[1]));
        }
        heap.push(gauss_kronrod(&f, w[0], w[1]));
    }
    loop {
        let (value, error, floor) = totals(&heap);
        if error <= tol.max(2.0 * floor) {
            return Ok(Quadrature {
                value,
                error,
                panels: heap.len(),
            });
        }
        if !error.is_finite() {
            return Err(Error::NonConvergence("quadrature integrand not finite"));
        }
        if heap.len() >= max_panels {
            return Err(Error::NonConvergence("quadrature panel budget exhausted"));
        }
        // Refine a batch of panels between recomputations of the totals so
        // the sweep stays linear in the number of panels.
        let batch = (heap.len() / 8).max(1);
        for _ in 0..batch {
            let worst = match heap.pop() {
                Some(p) => p,
                None => break,
            };
            let mid = 0.5 * (worst.a + worst.b);
            if !(worst.a < mid && mid < worst.b) {
                return Err(Error::NonConvergence("quadrature panel below resolution"));
            }
            heap.push(gauss_kronrod(&f, worst.a, mid));
            heap.push(gauss_kronrod(&f, mid, worst.b));
        }
    }
}

fn totals(heap: &BinaryHeap<Panel>) -> (f64, f64, f64) {
    let mut v = Neumaier::default();
    let (mut e, mut r) = (0.0, 0.0);
    for p in heap.iter() {
        v.add(p.value);
        e += p.error;
        r += p.floor;
    }
    (v.value(), e, r)
}

/// Breakpoints on `[a, b]` refined geometrically toward both endpoints.
///
/// Refinement toward a nonzero endpoint stops while the panels are still
/// wide enough for the Kronrod nodes to be distinct from the endpoint.
pub fn geometric_breaks(a: f64, b: f64) -> Vec<f64> {
    let w = b - a;
    let resolvable = |end: f64, s: f64| s >= libm::ldexp(libm::fabs(end), -40);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for j in (2..=GEOMETRIC_LEVELS).rev() {
        let s = libm::ldexp(w, -j);
        if resolvable(a, s) {
            left.push(a + s);
        }
        if resolvable(b, s) {
            right.push(b - s);
        }
    }
    let mut out = Vec::with_capacity(left.len() + right.len() + 3);
    out.push(a);
    out.extend(left);
    out.push(a + 0.5 * w);
    out.extend(right.into_iter().rev());
    out.push(b);
    out.dedup();
    out
}

/// Integrate `f` over `[a, b]` with geometric refinement toward both ends,
/// which tames integrable endpoint singularities.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<Quadrature> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(domain("quadrature interval", b - a));
    }
    integrate_with_breaks(f, &geometric_breaks(a, b), tol, DEFAULT_PANEL_BUDGET)
}

/// Function whose Cauchy expectation [`quadrature_mean`] computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Integrand {
    /// `ξ(a)`.
    Xi,
    /// `ξ(a)²`.
    XiSquared,
    /// `ln(1 + a)`.
    Log1p,
}

impl Integrand {
    /// Evaluate at `a ≥ 0`.
    pub fn eval(self, a: f64) -> f64 {
        match self {
            Self::Xi => xi_unchecked(a),
            Self::XiSquared => {
                let x = xi_unchecked(a);
                x * x
            }
            Self::Log1p => libm::log1p(a),
        }
    }
}

/// `E g(λ|X|)` for standard Cauchy `X`, by quadrature.
///
/// The half line is folded onto `[0, 1]`:
/// `(2/π)∫₀^∞ g(λx)/(1+x²) dx = (2/π)∫₀¹ [g(λx) + g(λ/x)]/(1+x²) dx`,
/// and the logarithmic growth of `g(λ/x)` at `x = 0` is absorbed by
/// geometric panels. The returned value carries an estimated error of at
/// most `tol` (or rounding level, whichever is larger).
pub fn quadrature_mean(g: Integrand, lambda: f64, tol: f64) -> Result<f64> {
    quadrature_mean_detail(g, lambda, tol).map(|q| q.value)
}

/// [`quadrature_mean`] with the error estimate and panel count.
pub fn quadrature_mean_detail(g: Integrand, lambda: f64, tol: f64) -> Result<Quadrature> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(domain("quadrature_mean lambda", lambda));
    }
    if !(tol >= MIN_TOLERANCE) {
        return Err(domain("quadrature_mean tolerance", tol));
    }
    let folded = |x: f64| {
        let near = g.eval(lambda * x);
        let far = if x == 0.0 { 0.0 } else { g.eval(lambda / x) };
        (near + far) / (1.0 + x * x)
    };
    // Breakpoints toward 0 only; the fold is smooth at x = 1.
    let mut breaks = Vec::with_capacity(GEOMETRIC_LEVELS as usize + 2);
    breaks.push(0.0);
    for j in (1..=GEOMETRIC_LEVELS).rev() {
        breaks.push(libm::ldexp(1.0, -j));
    }
    breaks.push(1.0);
    let q = integrate_with_breaks(folded, &breaks, tol / FRAC_2_PI, DEFAULT_PANEL_BUDGET)?;
    Ok(Quadrature {
        value: FRAC_2_PI * q.value,
        error: FRAC_2_PI * q.error,
        panels: q.panels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{expected_log1p, mu, mu_small_envelope};
    use crate::specfun::{li, ti2};

    #[test]
    fn polynomial_is_exact() {
        let q = integrate(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-14).unwrap();
        assert!((q.value - 0.0).abs() < 1e-14);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫₀¹ ln(x) dx = −1 and ∫₀¹ x^{-1/2} dx = 2.
        let q = integrate(libm::log, 0.0, 1.0, 1e-13).unwrap();
        assert!((q.value + 1.0).abs() < 1e-12, "{}", q.value);
        let q = integrate(|x| 1.0 / libm::sqrt(x), 0.0, 1.0, 1e-12).unwrap();
        assert!((q.value - 2.0).abs() < 1e-10, "{}", q.value);
    }

    #[test]
    fn ti2_against_integral() {
        for x in [0.3, 0.7, 1.0, 2.0, 10.0] {
            let q = integrate(|t: f64| libm::atan(t) / t, 0.0, x, 1e-14).unwrap();
            let v = ti2(x).unwrap();
            assert!((q.value - v).abs() < 1e-12, "x={x}: {} vs {v}", q.value);
        }
    }

    #[test]
    fn dilog_against_integral() {
        let g = |t: f64| -libm::log1p(-t) / t;
        for x in [-0.9f64, -0.6, 0.3, 0.7, 0.95, 1.0] {
            let v = li(2.0, x).unwrap();
            let oracle = if x == 1.0 {
                // t = 1 − s moves the logarithmic endpoint to 0, where the
                // nodes keep full relative precision.
                let h = |s: f64| -libm::log(s) / (1.0 - s);
                integrate(h, 0.0, 1.0, 1e-14).unwrap().value
            } else if x > 0.0 {
                integrate(g, 0.0, x, 1e-14).unwrap().value
            } else {
                -integrate(g, x, 0.0, 1e-14).unwrap().value
            };
            assert!((oracle - v).abs() < 1e-12, "x={x}: {oracle} vs {v}");
        }
    }

    #[test]
    fn cauchy_mean_of_constant_is_one() {
        // Folding keeps the total mass: (2/π)∫₀¹ 2/(1+x²) dx = 1.
        let q = integrate_with_breaks(|x| 2.0 / (1.0 + x * x), &[0.0, 1.0], 1e-15, 100).unwrap();
        assert!((FRAC_2_PI * q.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn named_expectations() {
        let m = quadrature_mean(Integrand::Xi, 1.0, 1e-12).unwrap();
        assert!((m - 1.227_947_177_3).abs() < 1e-10);
        assert!((m - mu(1.0).unwrap()).abs() < 1e-12);
        let l = quadrature_mean(Integrand::Log1p, 1.0, 1e-12).unwrap();
        assert!((l - 0.929_69).abs() < 1e-5);
        assert!((l - expected_log1p(1.0).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn tiny_scale_inside_envelope() {
        let m = quadrature_mean(Integrand::Xi, 1e-6, 1e-12).unwrap();
        let (lo, hi) = mu_small_envelope(1e-6).unwrap();
        assert!(lo <= m && m <= hi, "{lo} {m} {hi}");
    }

    #[test]
    fn closed_forms_across_scales() {
        for j in -4..=4 {
            let l = libm::pow(10.0, j as f64);
            let q = quadrature_mean(Integrand::Xi, l, 1e-12).unwrap();
            assert!((q - mu(l).unwrap()).abs() < 1e-10, "λ={l}");
            let q = quadrature_mean(Integrand::Log1p, l, 1e-12).unwrap();
            assert!((q - expected_log1p(l).unwrap()).abs() < 1e-10, "λ={l}");
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(quadrature_mean(Integrand::Xi, 0.0, 1e-12).is_err());
        assert!(quadrature_mean(Integrand::Xi, 1.0, 1e-14).is_err());
        assert!(integrate(|x| x, 1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let r = integrate_with_breaks(|x: f64| libm::sin(1.0 / x), &[1e-6, 1.0], 1e-14, 10);
        assert_eq!(
            r,
            Err(Error::NonConvergence("quadrature panel budget exhausted"))
        );
    }
}
