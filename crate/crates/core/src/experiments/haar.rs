//! Haar-random pure states and their `(Δ, M₂)` distribution.
//!
//! Sampling is split into a fixed number of partitions. Partition `p` draws
//! from a ChaCha8 generator seeded with `seed` on stream `p`, so results only
//! depend on `(n, seed, partitions)` and never on thread scheduling.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::map_indices;
use crate::frontiers::{f_abc, m2_max};
use crate::measures::{concurrence, m2_from_expectations};
use crate::state::StateVector;

pub const DEFAULT_PARTITIONS: usize = 64;

/// Four i.i.d. standard complex Gaussians, normalized.
pub fn haar_sample<R: Rng + ?Sized>(rng: &mut R) -> StateVector {
    loop {
        let mut amps = [C64::new(0.0, 0.0); 4];
        for a in amps.iter_mut() {
            *a = C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        }
        if let Ok(s) = StateVector::from_amplitudes(amps) {
            return s;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HistogramPlan {
    pub n: u64,
    pub bins: usize,
    pub seed: u64,
    pub partitions: usize,
}

impl HistogramPlan {
    pub fn new(n: u64, bins: usize, seed: u64) -> Self {
        Self { n, bins, seed, partitions: DEFAULT_PARTITIONS }
    }

    fn partition_len(&self, p: usize) -> u64 {
        let parts = self.partitions.max(1) as u64;
        self.n / parts + u64::from((p as u64) < self.n % parts)
    }

    fn partition_rng(&self, p: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(p as u64);
        rng
    }

    /// Run `visit` on every sample of partition `p`, threading `acc` through.
    fn fold_partition<A>(&self, p: usize, mut acc: A, mut visit: impl FnMut(&mut A, f64, f64, &[f64; 16])) -> A {
        let mut rng = self.partition_rng(p);
        for _ in 0..self.partition_len(p) {
            let s = haar_sample(&mut rng);
            let ex = s.expectations();
            visit(&mut acc, concurrence(&s), m2_from_expectations(&ex), &ex);
        }
        acc
    }
}

/// Upper edge of the magic axis: the global maximum `ln(16/7)`.
pub fn default_y_max() -> f64 {
    (16.0f64 / 7.0).ln()
}

/// Counts of `(Δ, M₂)` pairs on a `bins_x × bins_y` grid over
/// `[0, 1] × [0, y_max]`. Out-of-range values land in the edge cells.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram2D {
    pub bins_x: usize,
    pub bins_y: usize,
    pub y_max: f64,
    /// Row-major by `ix`: `counts[ix * bins_y + iy]`.
    pub counts: Vec<u64>,
    pub n_samples: u64,
    pub seed: u64,
    pub partitions: usize,
}

impl Histogram2D {
    pub fn empty(bins_x: usize, bins_y: usize, y_max: f64, seed: u64, partitions: usize) -> Self {
        Self { bins_x, bins_y, y_max, counts: vec![0; bins_x * bins_y], n_samples: 0, seed, partitions }
    }

    pub fn count(&self, ix: usize, iy: usize) -> u64 {
        self.counts[ix * self.bins_y + iy]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn cell_of(&self, delta: f64, m2: f64) -> (usize, usize) {
        let ix = ((delta * self.bins_x as f64) as usize).min(self.bins_x - 1);
        let iy = ((m2.max(0.0) / self.y_max * self.bins_y as f64) as usize).min(self.bins_y - 1);
        (ix, iy)
    }

    /// `([x0, x1], [y0, y1])` covered by a cell.
    pub fn cell_bounds(&self, ix: usize, iy: usize) -> ((f64, f64), (f64, f64)) {
        let dx = 1.0 / self.bins_x as f64;
        let dy = self.y_max / self.bins_y as f64;
        ((ix as f64 * dx, (ix + 1) as f64 * dx), (iy as f64 * dy, (iy + 1) as f64 * dy))
    }

    pub fn add(&mut self, delta: f64, m2: f64) {
        let (ix, iy) = self.cell_of(delta, m2);
        self.counts[ix * self.bins_y + iy] += 1;
        self.n_samples += 1;
    }

    fn merge(&mut self, other: &Histogram2D) {
        for (a, b) in self.counts.iter_mut().zip(other.counts.iter()) {
            *a += b;
        }
        self.n_samples += other.n_samples;
    }
}

/// Histogram of `n` Haar samples with the default partition plan.
pub fn build_histogram(n: u64, bins: usize, seed: u64) -> Histogram2D {
    build_histogram_with(&HistogramPlan::new(n, bins, seed))
}

pub fn build_histogram_with(plan: &HistogramPlan) -> Histogram2D {
    let bins = plan.bins.max(1);
    let y_max = default_y_max();
    let parts = plan.partitions.max(1);
    let pieces = map_indices(parts, |p| {
        let h = Histogram2D::empty(bins, bins, y_max, plan.seed, parts);
        plan.fold_partition(p, h, |h, d, m, _| h.add(d, m))
    });
    let mut total = Histogram2D::empty(bins, bins, y_max, plan.seed, parts);
    for piece in &pieces {
        total.merge(piece);
    }
    total
}

/// Frontier containment and purity statistics over Haar samples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleStats {
    pub n: u64,
    /// Samples with `M₂ < f_abc(Δ) − 1e-9`.
    pub lower_violations: u64,
    /// Samples with `M₂ > m2_max(Δ) + 1e-9`.
    pub upper_violations: u64,
    /// Smallest `M₂ − f_abc(Δ)` seen.
    pub min_lower_margin: f64,
    /// Smallest `m2_max(Δ) − M₂` seen.
    pub min_upper_margin: f64,
    /// Largest `|Σ_P ⟨P⟩² − 4|`.
    pub max_purity_defect: f64,
    pub sum_delta: f64,
}

impl SampleStats {
    fn empty() -> Self {
        Self {
            n: 0,
            lower_violations: 0,
            upper_violations: 0,
            min_lower_margin: f64::INFINITY,
            min_upper_margin: f64::INFINITY,
            max_purity_defect: 0.0,
            sum_delta: 0.0,
        }
    }

    pub fn mean_delta(&self) -> f64 {
        self.sum_delta / self.n.max(1) as f64
    }

    fn merge(&mut self, o: &SampleStats) {
        self.n += o.n;
        self.lower_violations += o.lower_violations;
        self.upper_violations += o.upper_violations;
        self.min_lower_margin = self.min_lower_margin.min(o.min_lower_margin);
        self.min_upper_margin = self.min_upper_margin.min(o.min_upper_margin);
        self.max_purity_defect = self.max_purity_defect.max(o.max_purity_defect);
        self.sum_delta += o.sum_delta;
    }
}

const CONTAINMENT_TOL: f64 = 1e-9;

pub fn sample_stats(plan: &HistogramPlan) -> SampleStats {
    let parts = plan.partitions.max(1);
    let pieces = map_indices(parts, |p| {
        plan.fold_partition(p, SampleStats::empty(), |st, d, m, ex| {
            let lo = f_abc(d).expect("concurrence lies in [0, 1]");
            let hi = m2_max(d).expect("concurrence lies in [0, 1]").m2;
            st.n += 1;
            st.sum_delta += d;
            st.min_lower_margin = st.min_lower_margin.min(m - lo);
            st.min_upper_margin = st.min_upper_margin.min(hi - m);
            if m < lo - CONTAINMENT_TOL {
                st.lower_violations += 1;
            }
            if m > hi + CONTAINMENT_TOL {
                st.upper_violations += 1;
            }
            let purity: f64 = ex.iter().map(|v| v * v).sum();
            st.max_purity_defect = st.max_purity_defect.max((purity - 4.0).abs());
        })
    });
    let mut total = SampleStats::empty();
    for piece in &pieces {
        total.merge(piece);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_histogram() {
        let h = build_histogram(0, 10, 7);
        assert_eq!(h.counts.len(), 100);
        assert!(h.counts.iter().all(|c| *c == 0));
        assert_eq!(h.n_samples, 0);
    }

    #[test]
    fn counts_sum_to_n() {
        let h = build_histogram(10_007, 17, 3);
        assert_eq!(h.total(), 10_007);
        assert_eq!(h.n_samples, 10_007);
    }

    #[test]
    fn deterministic_for_fixed_plan() {
        let a = build_histogram(20_000, 20, 99);
        let b = build_histogram(20_000, 20, 99);
        assert_eq!(a, b);
        let c = build_histogram(20_000, 20, 100);
        assert_ne!(a.counts, c.counts);
    }

    #[test]
    fn partitions_split_exactly() {
        let plan = HistogramPlan { n: 1000, bins: 1, seed: 0, partitions: 7 };
        let total: u64 = (0..7).map(|p| plan.partition_len(p)).sum();
        assert_eq!(total, 1000);
    }

    #[test]
    fn samples_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert!((haar_sample(&mut rng).norm_sqr() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn edge_values_are_binned() {
        let mut h = Histogram2D::empty(4, 4, 1.0, 0, 1);
        h.add(1.0, 1.0);
        h.add(0.0, -1e-15);
        h.add(0.5, 5.0);
        assert_eq!(h.count(3, 3), 1);
        assert_eq!(h.count(0, 0), 1);
        assert_eq!(h.count(2, 3), 1);
    }
}
