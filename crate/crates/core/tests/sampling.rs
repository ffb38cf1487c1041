//! Haar statistics and histogram shape.

use magic_pareto::experiments::{build_histogram, build_histogram_with, sample_stats, HistogramPlan};
use magic_pareto::frontiers::{f_abc, m2_max};

/// Composite Simpson rule on `[a, b]` with `n` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        s += f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn mean_concurrence_matches_density() {
    // Haar concurrence density is 3C·sqrt(1 − C²).
    let expected = simpson(|c| 3.0 * c * c * (1.0 - c * c).max(0.0).sqrt(), 0.0, 1.0, 200_000);
    assert!((expected - 3.0 * std::f64::consts::PI / 16.0).abs() < 1e-6);
    let st = sample_stats(&HistogramPlan::new(400_000, 1, 5));
    // Standard deviation of C is about 0.22, so the standard error is ~3.5e-4.
    assert!((st.mean_delta() - expected).abs() < 2e-3, "{}", st.mean_delta());
}

#[test]
fn histogram_stays_in_the_band() {
    let h = build_histogram(300_000, 40, 11);
    let peak = *h.counts.iter().max().unwrap();
    for ix in 0..h.bins_x {
        for iy in 0..h.bins_y {
            let ((x0, x1), (y0, y1)) = h.cell_bounds(ix, iy);
            // Cells entirely outside the band between the frontiers must be empty.
            let lower = f_abc(x0).unwrap().min(f_abc(x1).unwrap());
            let upper = [x0, x1, 0.5 * (x0 + x1)].iter().map(|&x| m2_max(x).unwrap().m2).fold(0.0, f64::max);
            if y1 < lower - 1e-9 || y0 > upper + 1e-2 {
                assert_eq!(h.count(ix, iy), 0, "cell ({ix},{iy})");
            }
        }
    }
    // Near-stabilizer and maximal-magic corners are rare.
    assert!(h.count(0, 0) * 10 < peak);
    assert!(h.count(h.bins_x - 1, h.bins_y - 1) * 10 < peak);
}

#[test]
fn partition_plan_changes_the_stream_not_the_law() {
    let a = build_histogram_with(&HistogramPlan { n: 200_000, bins: 10, seed: 1, partitions: 64 });
    let b = build_histogram_with(&HistogramPlan { n: 200_000, bins: 10, seed: 1, partitions: 7 });
    assert_ne!(a.counts, b.counts);
    for (x, y) in a.counts.iter().zip(b.counts.iter()) {
        let (x, y) = (*x as f64, *y as f64);
        assert!((x - y).abs() <= 6.0 * (x + y + 1.0).sqrt(), "{x} vs {y}");
    }
}
