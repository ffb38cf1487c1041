//! Numerical experiments around the analytic frontiers: Haar sampling,
//! a brute-force optimization oracle, and Clifford orbits.

pub mod clifford;
pub mod haar;
pub mod oracle;

pub use clifford::{build_clifford_group, clifford_orbit, CliffordGroup};
pub use haar::{build_histogram, build_histogram_with, haar_sample, sample_stats, Histogram2D, HistogramPlan, SampleStats};
pub use oracle::{frontier_oracle, Mode, OracleConfig, OracleResult};

/// Name of the random generator family, recorded in output metadata.
pub const GENERATOR: &str = "chacha8";

/// Evaluate `f` on `0..count`, in parallel when the `parallel` feature is on.
/// Results are returned in index order either way.
pub(crate) fn map_indices<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}
