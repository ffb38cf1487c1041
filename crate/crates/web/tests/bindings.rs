use magic_pareto_web::{frontier_table, histogram_counts, measure_angles};

#[test]
fn frontier_rows_are_ordered() {
    let t = frontier_table(200);
    for row in t.chunks(4) {
        assert!(row[1] >= row[2], "{row:?}");
    }
    // Branch labels change only at the joints, in order.
    let labels: Vec<f64> = t.chunks(4).map(|r| r[3]).collect();
    let mut changes: Vec<f64> = labels.windows(2).filter(|w| w[0] != w[1]).map(|w| w[1]).collect();
    changes.dedup();
    assert_eq!(changes, vec![2.0, 3.0]);
}

#[test]
fn measure_matches_frontier_at_h() {
    let a = 0.955_316_618_124_509_2;
    let q = std::f64::consts::FRAC_PI_4;
    let v = measure_angles(&[a, q, a, q, std::f64::consts::FRAC_PI_6, std::f64::consts::PI / 3.0]).unwrap();
    assert!((v[0] - 0.5).abs() < 1e-12);
    assert!((v[1] - (16.0f64 / 7.0).ln()).abs() < 1e-12);
    let purity: f64 = v[2..].iter().map(|x| x * x).sum();
    assert!((purity - 4.0).abs() < 1e-12);
}

#[test]
fn histogram_is_seeded() {
    assert_ne!(histogram_counts(2000, 8, 1), histogram_counts(2000, 8, 2));
    assert_eq!(histogram_counts(0, 0, 0), vec![0]);
}
