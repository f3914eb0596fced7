//! Dense Cauchy projections and ℓ₁ distance estimation.

use alloc::vec::Vec;

use crate::cauchy::RngSeed;
use crate::concentration::{plan_dimension, RegimeKind, ScaleRegime};
use crate::error::{domain, Error, Result};
use crate::metric::{rho, SketchedPoint};
use crate::moments::{check_epsilon, mu_inverse};

/// Default cap on `k · d` matrix entries.
pub const DEFAULT_ENTRY_BUDGET: u64 = 1 << 31;

/// A `k × d` matrix of iid standard Cauchy entries, row-major.
///
/// Entry `(i, j)` is draw number `i·d + j` of the stream named by the seed,
/// so `(k, d, seed)` fixes every entry.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionMatrix {
    k: usize,
    d: usize,
    entries: Vec<f64>,
    seed: RngSeed,
}

impl ProjectionMatrix {
    /// Target dimension.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Ambient dimension.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Seed the entries were drawn from.
    pub fn seed(&self) -> RngSeed {
        self.seed
    }

    /// All entries, row-major.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Row `i`.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.d..(i + 1) * self.d]
    }
}

/// Draw a `k × d` projection under [`DEFAULT_ENTRY_BUDGET`].
pub fn build_projection(k: usize, d: usize, seed: RngSeed) -> Result<ProjectionMatrix> {
    build_projection_with_budget(k, d, seed, DEFAULT_ENTRY_BUDGET)
}

/// Draw a `k × d` projection, refusing more than `budget` entries.
pub fn build_projection_with_budget(
    k: usize,
    d: usize,
    seed: RngSeed,
    budget: u64,
) -> Result<ProjectionMatrix> {
    if k == 0 {
        return Err(domain("build_projection k", 0.0));
    }
    if d == 0 {
        return Err(domain("build_projection d", 0.0));
    }
    let requested = k as u128 * d as u128;
    if requested > budget as u128 {
        return Err(Error::SizeOverflow { requested, budget });
    }
    let mut stream = seed.stream();
    let entries = (0..requested as usize).map(|_| stream.next_cauchy()).collect();
    Ok(ProjectionMatrix { k, d, entries, seed })
}

/// `F v`, the sketch of `v`.
pub fn project(m: &ProjectionMatrix, v: &[f64]) -> Result<SketchedPoint> {
    if v.len() != m.d {
        return Err(Error::DimensionMismatch {
            expected: m.d,
            found: v.len(),
        });
    }
    if let Some(&bad) = v.iter().find(|x| !x.is_finite()) {
        return Err(domain("project input", bad));
    }
    let coords = m
        .entries
        .chunks_exact(m.d)
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect();
    SketchedPoint::new(coords)
}

/// Sketch parameters: ε, the exponent `c`, the number of points `N`, and an
/// optional explicit `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SketchConfig {
    /// Relative distortion target, `0 < ε ≤ ¼`.
    pub epsilon: f64,
    /// Failure exponent, `c ≥ 3`.
    pub c: f64,
    /// Number of points the plan covers.
    pub n_points: u64,
    /// Use this `k` instead of planning one.
    pub k_override: Option<u64>,
}

impl SketchConfig {
    /// Configuration whose `k` comes from [`plan_dimension`].
    pub fn new(epsilon: f64, c: f64, n_points: u64) -> Self {
        Self {
            epsilon,
            c,
            n_points,
            k_override: None,
        }
    }

    /// Replace the planned `k`.
    pub fn with_k(mut self, k: u64) -> Self {
        self.k_override = Some(k);
        self
    }

    /// The target dimension. With an override only `ε` and `c` are checked,
    /// so single-point sets can still be sketched.
    pub fn target_dimension(&self) -> Result<u64> {
        match self.k_override {
            Some(k) => {
                check_epsilon(self.epsilon)?;
                if !(self.c >= 3.0) {
                    return Err(Error::Infeasible("c must be ≥ 3"));
                }
                if k == 0 {
                    return Err(domain("k override", 0.0));
                }
                Ok(k)
            }
            None => Ok(plan_dimension(self.epsilon, self.n_points, self.c)?.k),
        }
    }
}

/// `N` points of dimension `d` stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    n: usize,
    d: usize,
    data: Vec<f64>,
}

impl PointSet {
    /// From rows of equal length; at least one row, at least one column.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let first = rows.first().ok_or(Error::ConfigMismatch("empty point set"))?;
        let d = first.as_ref().len();
        if d == 0 {
            return Err(Error::ConfigMismatch("points have no coordinates"));
        }
        let mut data = Vec::with_capacity(rows.len() * d);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != d {
                return Err(Error::Ragged {
                    row,
                    expected: d,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            n: rows.len(),
            d,
            data,
        })
    }

    /// From a row-major buffer of `n · d` values.
    pub fn from_flat(n: usize, d: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::ConfigMismatch("point set must be non-empty"));
        }
        if data.len() != n * d {
            return Err(Error::DimensionMismatch {
                expected: n * d,
                found: data.len(),
            });
        }
        Ok(Self { n, d, data })
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; a point set holds at least one point.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Dimension of every point.
    pub fn dim(&self) -> usize {
        self.d
    }

    /// Point `i`.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    /// Iterate over points in order.
    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.d)
    }
}

/// Sketch every point with one shared matrix, preserving input order.
pub fn sketch_dataset(
    points: &PointSet,
    cfg: &SketchConfig,
    seed: RngSeed,
) -> Result<(ProjectionMatrix, Vec<SketchedPoint>)> {
    if points.len() as u64 != cfg.n_points {
        return Err(Error::ConfigMismatch("point count differs from n_points"));
    }
    let k = cfg.target_dimension()?;
    let k = usize::try_from(k).map_err(|_| Error::SizeOverflow {
        requested: k as u128 * points.dim() as u128,
        budget: DEFAULT_ENTRY_BUDGET,
    })?;
    let m = build_projection(k, points.dim(), seed)?;
    let sketches = points
        .rows()
        .map(|p| project(&m, p))
        .collect::<Result<Vec<_>>>()?;
    Ok((m, sketches))
}

/// Regime tag attached to an estimate, from the estimated scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum EstimateRegime {
    /// `λ̂ ≥ √(1+ε)`: relative band `[λ/(1+ε), (1+ε)λ]`.
    Large,
    /// `8ε² < λ̂ < √(1+ε)`: band `μ⁻¹((1 ± ε)μ(λ))`.
    Small,
    /// `λ̂ ≤ 8ε²`: only the lower side of the band is guaranteed.
    ReallySmallUnprovenUpper,
}

impl EstimateRegime {
    /// Stable lowercase tag.
    pub fn tag(self) -> &'static str {
        match self {
            Self::Large => "large",
            Self::Small => "small",
            Self::ReallySmallUnprovenUpper => "really_small_unproven_upper",
        }
    }
}

impl From<RegimeKind> for EstimateRegime {
    fn from(k: RegimeKind) -> Self {
        match k {
            RegimeKind::Large => Self::Large,
            RegimeKind::Small => Self::Small,
            RegimeKind::ReallySmall => Self::ReallySmallUnprovenUpper,
        }
    }
}

/// An ℓ₁ estimate with the sketch distance it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct L1Estimate {
    /// `ρ(u, v)`.
    pub rho: f64,
    /// `μ⁻¹(ρ)`.
    pub l1: f64,
    /// Regime of `l1` at the configured ε.
    pub regime: EstimateRegime,
}

/// `μ⁻¹(ρ(u, v))`, the ℓ₁ distance estimate.
pub fn estimate_l1(u: &SketchedPoint, v: &SketchedPoint) -> Result<f64> {
    mu_inverse(rho(u, v)?)
}

/// [`estimate_l1`] plus the regime of the estimate under `epsilon`.
pub fn estimate_with_regime(
    u: &SketchedPoint,
    v: &SketchedPoint,
    epsilon: f64,
) -> Result<L1Estimate> {
    let r = rho(u, v)?;
    let l1 = mu_inverse(r)?;
    Ok(L1Estimate {
        rho: r,
        l1,
        regime: ScaleRegime::classify(l1, epsilon)?.kind.into(),
    })
}

/// Estimates for all pairs `i < j`, in lexicographic order.
pub fn estimate_all_pairs(
    sketches: &[SketchedPoint],
    epsilon: f64,
) -> Result<Vec<(usize, usize, L1Estimate)>> {
    let n = sketches.len();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j, estimate_with_regime(&sketches[i], &sketches[j], epsilon)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy::sample_standard_cauchy;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn one_by_one_is_a_single_draw() {
        let s = RngSeed::new(5, 9);
        let m = build_projection(1, 1, s).unwrap();
        assert_eq!(m.entries()[0], sample_standard_cauchy(&mut s.stream()));
    }

    #[test]
    fn rebuilds_are_bit_identical() {
        let s = RngSeed::new(1, 2);
        let a = build_projection(3, 2, s).unwrap();
        let b = build_projection(3, 2, s).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.row(1), &a.entries()[2..4]);
    }

    #[test]
    fn budget_is_enforced() {
        let err = build_projection_with_budget(1000, 1000, RngSeed::default(), 999_999);
        assert!(matches!(err, Err(Error::SizeOverflow { requested: 1_000_000, .. })));
        assert!(build_projection(0, 3, RngSeed::default()).is_err());
    }

    #[test]
    fn projection_basics() {
        let m = build_projection(4, 3, RngSeed::new(3, 0)).unwrap();
        let z = project(&m, &[0.0; 3]).unwrap();
        assert!(z.coords().iter().all(|&c| c == 0.0));
        assert!(project(&m, &[1.0]).is_err());

        let col = build_projection(5, 1, RngSeed::new(3, 1)).unwrap();
        let p = project(&col, &[2.5]).unwrap();
        for (c, e) in p.coords().iter().zip(col.entries()) {
            assert_eq!(*c, 2.5 * e);
        }
    }

    #[test]
    fn dataset_handling() {
        let cfg = SketchConfig::new(0.25, 3.0, 1).with_k(16);
        let single = PointSet::from_rows(&[vec![1.0, 2.0]]).unwrap();
        let (_, sk) = sketch_dataset(&single, &cfg, RngSeed::new(1, 0)).unwrap();
        assert_eq!(sk.len(), 1);
        assert_eq!(sk[0].k(), 16);

        let ragged = PointSet::from_rows(&[vec![1.0, 2.0], vec![3.0]]);
        assert!(matches!(ragged, Err(Error::Ragged { row: 1, .. })));

        let two = PointSet::from_rows(&[vec![1.0], vec![2.0]]).unwrap();
        assert!(matches!(
            sketch_dataset(&two, &cfg, RngSeed::default()),
            Err(Error::ConfigMismatch(_))
        ));
        let unplanned = SketchConfig::new(0.25, 3.0, 1);
        assert!(sketch_dataset(&single, &unplanned, RngSeed::default()).is_err());
    }

    #[test]
    fn permuted_input_permutes_output() {
        let rows = [vec![1.0, 0.0, 2.0], vec![-1.0, 3.0, 0.5], vec![0.0, 0.0, 7.0]];
        let perm = [rows[2].clone(), rows[0].clone(), rows[1].clone()];
        let cfg = SketchConfig::new(0.25, 3.0, 3).with_k(32);
        let s = RngSeed::new(77, 1);
        let (ma, a) = sketch_dataset(&PointSet::from_rows(&rows).unwrap(), &cfg, s).unwrap();
        let (mb, b) = sketch_dataset(&PointSet::from_rows(&perm).unwrap(), &cfg, s).unwrap();
        assert_eq!(ma, mb);
        assert_eq!(a[2], b[0]);
        assert_eq!(a[0], b[1]);
        assert_eq!(a[1], b[2]);
    }

    #[test]
    fn identical_points_estimate_zero() {
        let m = build_projection(8, 2, RngSeed::new(4, 4)).unwrap();
        let p = project(&m, &[0.3, -0.2]).unwrap();
        let e = estimate_with_regime(&p, &p, 0.25).unwrap();
        assert_eq!((e.rho, e.l1), (0.0, 0.0));
        assert_eq!(e.regime, EstimateRegime::ReallySmallUnprovenUpper);
        assert_eq!(estimate_all_pairs(&[p.clone(), p], 0.25).unwrap().len(), 1);
    }

    proptest! {
        #[test]
        fn projection_is_linear(
            u in proptest::collection::vec(-10.0f64..10.0, 6),
            w in proptest::collection::vec(-10.0f64..10.0, 6),
            a in -3.0f64..3.0,
            b in -3.0f64..3.0,
        ) {
            let m = build_projection(7, 6, RngSeed::new(9, 9)).unwrap();
            let mix: Vec<f64> = u.iter().zip(&w).map(|(x, y)| a * x + b * y).collect();
            let lhs = project(&m, &mix).unwrap();
            let pu = project(&m, &u).unwrap();
            let pw = project(&m, &w).unwrap();
            for i in 0..7 {
                let rhs = a * pu.coords()[i] + b * pw.coords()[i];
                let scale: f64 = m.row(i).iter().map(|e| e.abs()).sum::<f64>() * 60.0 + 1.0;
                prop_assert!((lhs.coords()[i] - rhs).abs() <= 1e-13 * scale);
            }
        }

        #[test]
        fn rho_sees_only_differences(
            x in proptest::collection::vec(-5.0f64..5.0, 4),
            y in proptest::collection::vec(-5.0f64..5.0, 4),
            t in proptest::collection::vec(-5.0f64..5.0, 4),
        ) {
            let m = build_projection(64, 4, RngSeed::new(2, 3)).unwrap();
            let xt: Vec<f64> = x.iter().zip(&t).map(|(a, b)| a + b).collect();
            let yt: Vec<f64> = y.iter().zip(&t).map(|(a, b)| a + b).collect();
            let r0 = rho(&project(&m, &x).unwrap(), &project(&m, &y).unwrap()).unwrap();
            let r1 = rho(&project(&m, &xt).unwrap(), &project(&m, &yt).unwrap()).unwrap();
            prop_assert!((r0 - r1).abs() <= 1e-9 * r0.max(1.0));
        }
    }
}
