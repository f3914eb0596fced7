//! Kolmogorov–Smirnov statistics and binomial standard errors.

/// Asymptotic 1% critical coefficient `c(α) = √(−½ ln(α/2))` of the
/// Kolmogorov distribution.
pub const KS_C_1PCT: f64 = 1.627_623_630_718_729_3;

/// Number of standard errors allowed above a bound by Monte Carlo checks.
pub const MC_SIGMAS: f64 = 3.0;

/// One-sample statistic `sup_t |F_n(t) − F(t)|`. Sorts `samples` in place.
pub fn ks_one_sample<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> f64 {
    samples.sort_unstable_by(f64::total_cmp);
    let n = samples.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        let below = i as f64 / n;
        let above = (i + 1) as f64 / n;
        d = d.max(f - below).max(above - f);
    }
    d
}

/// Two-sample statistic `sup_t |F_a(t) − F_b(t)|`. Sorts both in place.
pub fn ks_two_sample(a: &mut [f64], b: &mut [f64]) -> f64 {
    a.sort_unstable_by(f64::total_cmp);
    b.sort_unstable_by(f64::total_cmp);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let t = a[i].min(b[j]);
        while i < a.len() && a[i] <= t {
            i += 1;
        }
        while j < b.len() && b[j] <= t {
            j += 1;
        }
        d = d.max(libm::fabs(i as f64 / n - j as f64 / m));
    }
    d
}

/// 1% critical value of the one-sample statistic at sample size `n`.
pub fn ks_critical(n: usize) -> f64 {
    KS_C_1PCT / libm::sqrt(n as f64)
}

/// 1% critical value of the two-sample statistic at sizes `n` and `m`.
pub fn ks_critical_two_sample(n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    KS_C_1PCT * libm::sqrt((n + m) / (n * m))
}

/// Standard error `√(p(1−p)/n)` of a frequency with success probability
/// `p`, clamped into `[0, 1]`.
pub fn binomial_se(p: f64, n: u64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    libm::sqrt(p * (1.0 - p) / n as f64)
}

/// Sample mean and standard error of the mean.
pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, f64::INFINITY);
    }
    let ss: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
    (mean, libm::sqrt(ss / (n - 1.0) / n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn critical_coefficient() {
        let c = libm::sqrt(-0.5 * libm::log(0.005));
        assert!((c - KS_C_1PCT).abs() < 1e-15);
        assert!((ks_critical(10_000) - 0.016_276).abs() < 1e-6);
    }

    #[test]
    fn one_sample_uniform_grid() {
        // Midpoints of n cells: D = 1/(2n) exactly.
        let mut xs: alloc::vec::Vec<f64> = (0..10).rev().map(|i| (i as f64 + 0.5) / 10.0).collect();
        let d = ks_one_sample(&mut xs, |x| x);
        assert!((d - 0.05).abs() < 1e-15);
    }

    #[test]
    fn two_sample_disjoint_and_identical() {
        let mut a = [1.0, 2.0, 3.0];
        let mut b = [4.0, 5.0];
        assert_eq!(ks_two_sample(&mut a, &mut b), 1.0);
        let mut a = [1.0, 2.0, 3.0];
        let mut b = [3.0, 1.0, 2.0];
        assert_eq!(ks_two_sample(&mut a, &mut b), 0.0);
        let mut a = [1.0, 3.0];
        let mut b = [2.0, 4.0];
        assert_eq!(ks_two_sample(&mut a, &mut b), 0.5);
    }

    #[test]
    fn standard_errors() {
        assert_eq!(binomial_se(0.0, 100), 0.0);
        assert!((binomial_se(0.5, 100) - 0.05).abs() < 1e-15);
        assert_eq!(binomial_se(2.0, 100), 0.0);
        let (m, se) = mean_and_se(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((se - libm::sqrt(5.0 / 3.0 / 4.0)).abs() < 1e-15);
    }
}
