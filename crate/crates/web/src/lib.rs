//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export is a thin wrapper over a plain Rust function so the logic can
//! be tested natively. Arrays cross the boundary as flat typed arrays.

use magic_pareto::experiments::haar::{build_histogram_with, HistogramPlan};
use magic_pareto::frontiers::{delta_g, m2_max, m2_min, Branch, DELTA_E};
use magic_pareto::measures::{concurrence, m2_direct, ExpectationTable};
use magic_pareto::params::{angles_to_state, WhartonAngles};
use wasm_bindgen::prelude::*;

/// `points + 1` rows of `[delta, m2_max, m2_min, branch_index]`, where
/// `branch_index` follows the order ABC, IHG, GFE, ED.
pub fn frontier_table(points: usize) -> Vec<f64> {
    let points = points.max(1);
    let mut out = Vec::with_capacity(4 * (points + 1));
    for k in 0..=points {
        let d = k as f64 / points as f64;
        let hi = m2_max(d).expect("grid lies in [0, 1]");
        let lo = m2_min(d).expect("grid lies in [0, 1]");
        let idx = Branch::ALL.iter().position(|b| *b == hi.branch).unwrap_or(0);
        out.extend_from_slice(&[d, hi.m2, lo.m2, idx as f64]);
    }
    out
}

/// `[delta, m2, <16 expectations in II, IX, ..., ZZ order>]`.
pub fn measure_angles(angles: &[f64]) -> magic_pareto::Result<Vec<f64>> {
    let [t1, p1, t2, p2, chi, g] = <[f64; 6]>::try_from(angles)
        .map_err(|_| magic_pareto::Error::InvalidAngles(format!("expected 6 angles, got {}", angles.len())))?;
    let s = angles_to_state(&WhartonAngles::new(t1, p1, t2, p2, chi, g)?);
    let mut out = vec![concurrence(&s), m2_direct(&s)];
    out.extend_from_slice(&ExpectationTable::of_state(&s).values);
    Ok(out)
}

/// Row-major `bins × bins` counts, `counts[ix * bins + iy]`.
pub fn histogram_counts(n: u32, bins: u32, seed: u32) -> Vec<u32> {
    let plan = HistogramPlan::new(u64::from(n), bins.clamp(1, 400) as usize, u64::from(seed));
    build_histogram_with(&plan).counts.iter().map(|c| *c as u32).collect()
}

#[wasm_bindgen]
pub fn frontiers(points: usize) -> Vec<f64> {
    frontier_table(points)
}

/// `[delta_G, delta_E]`.
#[wasm_bindgen]
pub fn joints() -> Vec<f64> {
    vec![delta_g(), DELTA_E]
}

#[wasm_bindgen]
pub fn measure(angles: &[f64]) -> Result<Vec<f64>, JsError> {
    measure_angles(angles).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn haar_histogram(n: u32, bins: u32, seed: u32) -> Vec<u32> {
    histogram_counts(n, bins, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frontier_table_layout() {
        let t = frontier_table(4);
        assert_eq!(t.len(), 20);
        // Δ = 1/2: IHG on top at ln(16/7), ABC below at ln(16/13).
        assert_eq!(t[8], 0.5);
        assert!((t[9] - (16.0f64 / 7.0).ln()).abs() < 1e-15);
        assert!((t[10] - (16.0f64 / 13.0).ln()).abs() < 1e-15);
        assert_eq!(t[11], 1.0);
        assert_eq!(t[19], 3.0);
    }

    #[test]
    fn measure_layout_and_errors() {
        let v = measure_angles(&[0.0, 0.0, 0.0, 0.0, std::f64::consts::FRAC_PI_2, 0.0]).unwrap();
        assert_eq!(v.len(), 18);
        assert!((v[0] - 1.0).abs() < 1e-12);
        assert!(v[1].abs() < 1e-12);
        assert!((v[2] - 1.0).abs() < 1e-12);
        assert!(measure_angles(&[0.0; 5]).is_err());
        assert!(measure_angles(&[4.0, 0.0, 0.0, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn histogram_counts_sum() {
        let h = histogram_counts(5000, 10, 1);
        assert_eq!(h.len(), 100);
        assert_eq!(h.iter().map(|c| *c as u64).sum::<u64>(), 5000);
        assert_eq!(h, histogram_counts(5000, 10, 1));
    }
}
