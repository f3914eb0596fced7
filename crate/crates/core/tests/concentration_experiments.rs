use cauchy_sketch_core::cauchy::RngSeed;
use cauchy_sketch_core::concentration::{plan_dimension_for_delta, RegimeKind};
use cauchy_sketch_core::verify::{empirical_k_search, run_concentration_trial};

const SEED: RngSeed = RngSeed::new(7_140_202, 0);

#[test]
fn no_concentration_at_k_one() {
    let t = run_concentration_trial(1.0, 0.25, 1, 10_000, SEED).unwrap();
    assert!(t.fail_upper + t.fail_lower <= t.trials);
    assert!(t.fail_fraction() > 0.5, "{t:?}");
}

#[test]
fn desk_scale_examples() {
    let t = run_concentration_trial(2.0, 0.25, 4000, 1000, SEED).unwrap();
    assert_eq!(t.regime, RegimeKind::Large);
    assert!(t.fail_fraction() <= 0.01, "{t:?}");

    // 0.1 ≤ 8ε² = 0.5, so this scale uses the (1 ± ε) μ band with an
    // upper tail that is only measured, not proven.
    let t = run_concentration_trial(0.1, 0.25, 8000, 1000, SEED).unwrap();
    assert_eq!(t.regime, RegimeKind::ReallySmall);
    assert!(t.fail_fraction() <= 0.01, "{t:?}");
}

#[test]
fn planner_dominates_empirical_k() {
    let planned = plan_dimension_for_delta(0.25, 0.01).unwrap().k;
    for lambda in [2.0, 0.1] {
        let k = empirical_k_search(lambda, 0.25, 0.01, SEED).unwrap();
        assert!(k <= planned, "lambda={lambda}: {k} > {planned}");
    }
}

#[test]
fn tighter_band_needs_more_draws() {
    for i in 0..5 {
        let seed = SEED.child(i);
        let wide = empirical_k_search(2.0, 0.25, 0.01, seed).unwrap();
        let narrow = empirical_k_search(2.0, 0.125, 0.01, seed).unwrap();
        assert!(narrow >= wide, "seed {i}: {narrow} < {wide}");
    }
}

#[test]
fn empirical_k_scales_like_inverse_square() {
    let eps = [0.25, 0.125, 0.0625];
    let ks: Vec<f64> = eps
        .iter()
        .map(|&e| empirical_k_search(2.0, e, 0.01, SEED).unwrap() as f64)
        .collect();
    let xs: Vec<f64> = eps.iter().map(|e: &f64| e.ln()).collect();
    let ys: Vec<f64> = ks.iter().map(|k| k.ln()).collect();
    let mx = xs.iter().sum::<f64>() / 3.0;
    let my = ys.iter().sum::<f64>() / 3.0;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    assert!((-3.0..=-1.0).contains(&slope), "slope {slope}, k = {ks:?}");
}
