//! End-to-end checks of the whole crate, each reporting its measured
//! residuals. Used by the `verify-all` command and the acceptance tests.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI, TAU};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalogs::{catalog, ed_catalog, same_state_set, verify_catalog};
use crate::experiments::clifford::{build_clifford_group, clifford_orbit, generators, partition_into_orbits};
use crate::experiments::haar::{sample_stats, HistogramPlan};
use crate::experiments::oracle::{frontier_oracle, Mode, OracleConfig};
use crate::frontiers::{
    delta_g, f_abc, f_ed, f_gfe, f_ihg, gamma_shift, m2_max, m2_min, slope, solve_delta_g, Branch, DELTA_E,
};
use crate::measures::{concurrence, expectation_table, m2_analytic, m2_direct, ExpectationTable};
use crate::params::{angles_to_state, assemble, make_spinor, WhartonAngles};
use crate::state::StateVector;

/// How much work each check does.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    /// Reduced random-sample counts, for quick runs.
    Fast,
    /// The full acceptance sample counts.
    Full,
}

impl Scale {
    fn random_draws(self) -> usize {
        match self {
            Scale::Fast => 1_000,
            Scale::Full => 10_000,
        }
    }

    fn haar_samples(self) -> u64 {
        match self {
            Scale::Fast => 50_000,
            Scale::Full => 1_000_000,
        }
    }
}

pub const SEED: u64 = 20_250_101;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {}. {}: {}", self.id, self.name, self.detail)
    }
}

/// Collects named residuals against tolerances.
struct Tally {
    ok: bool,
    parts: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Self { ok: true, parts: Vec::new() }
    }

    fn within(&mut self, label: &str, residual: f64, tol: f64) {
        let pass = residual.is_finite() && residual < tol;
        self.ok &= pass;
        self.parts.push(format!("{label} {residual:.2e}{}{tol:.0e}", if pass { "<" } else { ">=" }));
    }

    fn equal<T: PartialEq + fmt::Display>(&mut self, label: &str, got: T, want: T) {
        let pass = got == want;
        self.ok &= pass;
        self.parts.push(if pass { format!("{label} {got}") } else { format!("{label} {got}!={want}") });
    }

    fn fail(&mut self, label: &str, why: impl fmt::Display) {
        self.ok = false;
        self.parts.push(format!("{label} error: {why}"));
    }

    fn finish(self, id: u8, name: &'static str) -> CheckOutcome {
        CheckOutcome { id, name, passed: self.ok, detail: self.parts.join("; ") }
    }
}

fn ln(x: f64) -> f64 {
    x.ln()
}

pub fn check_frontier_anchors() -> CheckOutcome {
    let mut t = Tally::new();
    let r = 0.75f64.sqrt();
    let cases: [(&str, crate::Result<f64>, f64); 9] = [
        ("f_abc(1/sqrt2)", f_abc(FRAC_1_SQRT_2), ln(4.0 / 3.0)),
        ("f_abc(1/2)", f_abc(0.5), ln(16.0 / 13.0)),
        ("f_ihg(0)", f_ihg(0.0), ln(9.0 / 4.0)),
        ("f_ihg(1/2)", f_ihg(0.5), ln(16.0 / 7.0)),
        ("f_gfe(1/sqrt2)", f_gfe(FRAC_1_SQRT_2), ln(16.0 / 7.0)),
        ("f_ihg(1)", f_ihg(1.0), ln(9.0 / 5.0)),
        ("f_ed(1)", f_ed(1.0), ln(9.0 / 5.0)),
        ("f_gfe-f_ed at E", f_gfe(r).and_then(|a| f_ed(r).map(|b| a - b)), 0.0),
        ("m2_max(1/2)", m2_max(0.5).map(|p| p.m2), ln(16.0 / 7.0)),
    ];
    for (label, got, want) in cases {
        match got {
            Ok(v) => t.within(label, (v - want).abs(), 1e-10),
            Err(e) => t.fail(label, e),
        }
    }
    let expected = -(16.0 / 15.0) * r;
    let h = 1e-6;
    let fd = |f: fn(f64) -> crate::Result<f64>| (f(r + h).unwrap() - f(r - h).unwrap()) / (2.0 * h);
    match (slope(Branch::Gfe, r), slope(Branch::Ed, r)) {
        (Ok(g), Ok(e)) => {
            t.within("slope GFE at E", (g - expected).abs(), 1e-5);
            t.within("slope ED at E", (e - expected).abs(), 1e-5);
        }
        _ => t.fail("slope at E", "domain error"),
    }
    t.within("finite-difference GFE slope at E", (fd(f_gfe) - expected).abs(), 1e-5);
    t.within("finite-difference ED slope at E", (fd(f_ed) - expected).abs(), 1e-5);
    t.finish(1, "frontier anchor values")
}

pub fn check_quartic_roots() -> CheckOutcome {
    let mut t = Tally::new();
    match solve_delta_g() {
        Ok(r) => {
            t.within("delta_G", (r.primary - 0.637_264_45).abs(), 1e-7);
            t.within("secondary root", (r.secondary - 0.977_411).abs(), 1e-5);
            match (f_ihg(r.primary), f_gfe(r.primary)) {
                (Ok(a), Ok(b)) => t.within("f_ihg-f_gfe at G", (a - b).abs(), 1e-10),
                _ => t.fail("curves at G", "domain error"),
            }
        }
        Err(e) => t.fail("quartic", e),
    }
    t.finish(2, "point G quartic roots")
}

pub fn check_analytic_direct(scale: Scale) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut m2_err, mut table_err) = (0.0f64, 0.0f64);
    for _ in 0..scale.random_draws() {
        let w = WhartonAngles::random(&mut rng);
        let s = angles_to_state(&w);
        m2_err = m2_err.max((m2_analytic(&w) - m2_direct(&s)).abs());
        table_err = table_err.max(expectation_table(&w).max_deviation(&ExpectationTable::of_state(&s)));
    }
    let mut t = Tally::new();
    t.within("max |M2 analytic - direct|", m2_err, 1e-10);
    t.within("max table deviation", table_err, 1e-10);
    t.finish(3, "analytic and direct magic agree")
}

pub fn check_catalogs() -> CheckOutcome {
    let mut t = Tally::new();
    let cases = [
        (Branch::Abc, 0.7f64.asin(), 144, 18, "ABC"),
        (Branch::Ihg, 0.3f64.asin(), 192, 0, "IHG"),
        (Branch::Gfe, 0.8f64.asin(), 288, 9, "GFE"),
        (Branch::Ed, 0.9f64.asin(), 576, 9, "ED"),
    ];
    for (branch, chi, count, patterns, label) in cases {
        match verify_catalog(branch, chi) {
            Ok(r) => {
                t.equal(&format!("{label} count"), r.count_distinct, count);
                t.within(&format!("{label} residual"), r.frontier_residual_max, 1e-10);
                if patterns > 0 {
                    t.equal(&format!("{label} patterns"), r.patterns_seen.len(), patterns);
                }
                if let Some(agree) = r.listings_agree {
                    t.equal(&format!("{label} listings agree"), agree, true);
                }
            }
            Err(e) => t.fail(label, e),
        }
    }
    match verify_catalog(Branch::Ihg, PI / 6.0) {
        Ok(r) => t.equal("IHG patterns at H", r.patterns_seen.len(), 6),
        Err(e) => t.fail("IHG at H", e),
    }
    t.finish(4, "catalog counts, residuals and zero patterns")
}

pub fn check_clifford() -> CheckOutcome {
    let mut t = Tally::new();
    let group = match build_clifford_group() {
        Ok(g) => g,
        Err(e) => {
            t.fail("group", e);
            return t.finish(5, "Clifford orbits");
        }
    };
    t.equal("group order", group.len(), 11_520);

    // One maximal-magic state generates all of them, split across H and F.
    let seed = catalog(Branch::Ihg, FRAC_PI_6).map(|c| c[0].state());
    match (seed, catalog(Branch::Ihg, FRAC_PI_6), catalog(Branch::Gfe, FRAC_PI_4)) {
        (Ok(seed), Ok(at_h), Ok(at_f)) => {
            let orbit = clifford_orbit(&seed, &group);
            t.equal("maximal-magic orbit", orbit.len(), 480);
            let target = ln(16.0 / 7.0);
            let m2_spread = orbit.iter().map(|s| (m2_direct(s) - target).abs()).fold(0.0, f64::max);
            t.within("orbit M2 spread", m2_spread, 1e-10);
            let slice = |d: f64| -> Vec<StateVector> {
                orbit.iter().copied().filter(|s| (concurrence(s) - d).abs() < 1e-10).collect()
            };
            let (h, f) = (slice(0.5), slice(FRAC_1_SQRT_2));
            t.equal("orbit states at delta 1/2", h.len(), 192);
            t.equal("orbit states at delta 1/sqrt2", f.len(), 288);
            let states = |c: &[crate::catalogs::CatalogEntry]| c.iter().map(|e| e.state()).collect::<Vec<_>>();
            t.equal("slice at H equals IHG catalog", same_state_set(&h, &states(&at_h)), true);
            t.equal("slice at F equals GFE catalog", same_state_set(&f, &states(&at_f)), true);
            let from_f = clifford_orbit(&at_f[0].state(), &group);
            t.equal("GFE seed gives the same orbit", same_state_set(&orbit, &from_f), true);
        }
        _ => t.fail("maximal-magic catalogs", "domain error"),
    }

    match ed_catalog(0.9f64.asin()) {
        Ok(cat) => {
            let states: Vec<StateVector> = cat.iter().map(|e| e.state()).collect();
            let states = crate::state::distinct_states(states.iter());
            let p = partition_into_orbits(&states, &group);
            let sizes: Vec<usize> = p.orbits.iter().map(Vec::len).collect();
            t.equal("ED orbit sizes", format!("{sizes:?}"), "[288, 288]".to_string());
            t.equal("ED states escaping the catalog", p.escaped, 0);
        }
        Err(e) => t.fail("ED catalog", e),
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let s = angles_to_state(&WhartonAngles::random(&mut rng));
        let m = m2_direct(&s);
        for g in generators() {
            worst = worst.max((m2_direct(&g.apply_trusted(&s)) - m).abs());
        }
    }
    t.within("generator M2 drift", worst, 1e-10);
    t.finish(5, "Clifford orbits")
}

/// The concurrence schedule used for oracle comparisons.
pub fn oracle_schedule() -> [f64; 10] {
    [0.1, 0.3, 0.5, delta_g(), 0.7, FRAC_1_SQRT_2, DELTA_E, 0.9, 0.95, 1.0]
}

/// Distance from `gamma` to the nearest multiple of `π/2`.
pub fn gamma_lattice_offset(gamma: f64) -> f64 {
    (0..4)
        .map(|k| {
            let d = (gamma - k as f64 * FRAC_PI_2).rem_euclid(TAU);
            d.min(TAU - d)
        })
        .fold(f64::INFINITY, f64::min)
}

pub fn check_oracle() -> CheckOutcome {
    let mut t = Tally::new();
    let mut worst = [0.0f64; 2];
    for delta in oracle_schedule() {
        for (k, mode) in [Mode::Maximize, Mode::Minimize].into_iter().enumerate() {
            let cfg = OracleConfig::with_mode(mode);
            let analytic = match mode {
                Mode::Maximize => m2_max(delta),
                Mode::Minimize => m2_min(delta),
            };
            match (frontier_oracle(delta, &cfg), analytic) {
                (Ok(r), Ok(a)) => worst[k] = worst[k].max((r.m2 - a.m2).abs()),
                (Err(e), _) | (_, Err(e)) => t.fail(&format!("oracle {mode} at {delta}"), e),
            }
        }
    }
    t.within("max oracle error (max)", worst[0], 1e-4);
    t.within("max oracle error (min)", worst[1], 1e-4);

    let delta = 0.9;
    let cfg = OracleConfig::default();
    match (frontier_oracle(delta, &cfg), gamma_shift(delta)) {
        (Ok(r), Ok(shift)) => {
            t.within("ED gamma offset error", (gamma_lattice_offset(r.angles.gamma) - shift).abs(), 1e-4)
        }
        (Err(e), _) | (_, Err(e)) => t.fail("ED gamma", e),
    }
    t.finish(6, "brute-force oracle agrees with frontiers")
}

pub fn check_containment(scale: Scale) -> CheckOutcome {
    let plan = HistogramPlan::new(scale.haar_samples(), 1, SEED);
    let st = sample_stats(&plan);
    let mut t = Tally::new();
    t.equal("samples", st.n, scale.haar_samples());
    t.equal("below lower frontier", st.lower_violations, 0);
    t.equal("above upper frontier", st.upper_violations, 0);
    t.within("max purity defect", st.max_purity_defect, 1e-9);
    t.parts.push(format!("min margins {:.2e}/{:.2e}", st.min_lower_margin, st.min_upper_margin));
    t.finish(7, "Haar samples lie between the frontiers")
}

pub fn check_round_trip(scale: Scale) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let (mut conc_err, mut fid_err) = (0.0f64, 0.0f64);
    for _ in 0..scale.random_draws() {
        let w = WhartonAngles::random(&mut rng);
        let s = angles_to_state(&w);
        conc_err = conc_err.max((concurrence(&s) - w.chi.sin()).abs());
        let alpha1 = rand::Rng::gen_range(&mut rng, 0.0..TAU);
        let assembled =
            assemble(&make_spinor(w.theta1, w.phi1, alpha1), &make_spinor(w.theta2, w.phi2, w.gamma - alpha1), w.chi);
        fid_err = fid_err.max((assembled.fidelity(&s) - 1.0).abs());
    }
    let mut t = Tally::new();
    t.within("max |2|ad-bc| - sin chi|", conc_err, 1e-10);
    t.within("max |1 - fidelity|", fid_err, 1e-10);
    t.finish(8, "parametrization round trip")
}

pub fn run_all(scale: Scale) -> Vec<CheckOutcome> {
    vec![
        check_frontier_anchors(),
        check_quartic_roots(),
        check_analytic_direct(scale),
        check_catalogs(),
        check_clifford(),
        check_oracle(),
        check_containment(scale),
        check_round_trip(scale),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_offset() {
        assert!(gamma_lattice_offset(0.0).abs() < 1e-15);
        assert!((gamma_lattice_offset(PI + 0.2) - 0.2).abs() < 1e-12);
        assert!((gamma_lattice_offset(-0.1) - 0.1).abs() < 1e-12);
        assert!((gamma_lattice_offset(PI / 4.0) - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn cheap_checks_pass() {
        for c in [check_frontier_anchors(), check_quartic_roots(), check_analytic_direct(Scale::Fast), check_round_trip(Scale::Fast)] {
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn failure_is_reported() {
        let mut t = Tally::new();
        t.within("x", 1.0, 1e-3);
        let c = t.finish(9, "demo");
        assert!(!c.passed);
        assert!(c.to_string().starts_with("[FAIL] 9. demo"));
    }
}
