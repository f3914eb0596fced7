use cauchy_sketch_core::cauchy::RngSeed;
use cauchy_sketch_core::sketch::{
    build_projection, estimate_all_pairs, estimate_l1, project, sketch_dataset, PointSet, SketchConfig,
};
use cauchy_sketch_core::verify::empirical_k_search_with;

const SEED: RngSeed = RngSeed::new(31_337, 4);

#[test]
fn unit_distance_at_large_k() {
    let trials = 100;
    let mut inside = 0;
    for t in 0..trials {
        let m = build_projection(100_000, 1, SEED.child(t)).unwrap();
        let e = estimate_l1(&project(&m, &[1.0]).unwrap(), &project(&m, &[0.0]).unwrap()).unwrap();
        if (0.9..=1.1).contains(&e) {
            inside += 1;
        }
    }
    assert!(inside as f64 >= 0.99 * trials as f64, "{inside}/{trials}");
}

#[test]
fn hundred_points_in_dimension_thousand() {
    let (n, d, eps) = (100usize, 1000usize, 0.25);
    let mut s = SEED.child(1000).stream();
    let rows: Vec<Vec<f64>> = (0..n).map(|_| (0..d).map(|_| s.next_uniform()).collect()).collect();
    let points = PointSet::from_rows(&rows).unwrap();
    let truth = |i: usize, j: usize| -> f64 { rows[i].iter().zip(&rows[j]).map(|(a, b)| (a - b).abs()).sum() };

    // Uniform coordinates put every pairwise distance near d/3. The k is
    // searched at a tenth of the 1/N per-pair budget, leaving room for the
    // frequency check below.
    let search = empirical_k_search_with(d as f64 / 3.0, eps, 0.1 / n as f64, SEED.child(1001), 1000, 1 << 16).unwrap();
    let cfg = SketchConfig::new(eps, 3.0, n as u64).with_k(search.k);
    let (m, sketches) = sketch_dataset(&points, &cfg, SEED.child(1002)).unwrap();
    assert_eq!(m.k() as u64, search.k);

    let pairs = estimate_all_pairs(&sketches, eps).unwrap();
    assert_eq!(pairs.len(), n * (n - 1) / 2);
    let inside = pairs
        .iter()
        .filter(|(i, j, e)| {
            let l = truth(*i, *j);
            l / (1.0 + eps) <= e.l1 && e.l1 <= (1.0 + eps) * l
        })
        .count();
    let freq = inside as f64 / pairs.len() as f64;
    assert!(freq >= 1.0 - 1.0 / n as f64, "k={} freq={freq}", search.k);
}

#[test]
fn translation_leaves_sketch_distance_unchanged() {
    let m = build_projection(256, 5, SEED).unwrap();
    let x = [1.0, 2.0, -3.0, 0.5, 0.0];
    let y = [0.0, 2.5, -1.0, 0.5, 4.0];
    let t = [100.0, -7.0, 3.25, 0.0, 1e3];
    let shift = |v: &[f64]| -> Vec<f64> { v.iter().zip(&t).map(|(a, b)| a + b).collect() };
    let base = estimate_l1(&project(&m, &x).unwrap(), &project(&m, &y).unwrap()).unwrap();
    let moved = estimate_l1(&project(&m, &shift(&x)).unwrap(), &project(&m, &shift(&y)).unwrap()).unwrap();
    assert!((base - moved).abs() <= 1e-9 * base, "{base} vs {moved}");
}
