//! Concurrence, stabilizer Rényi-2 magic and zero patterns.

use std::fmt;

use crate::params::WhartonAngles;
use crate::state::{PauliString, StateVector};

/// Default threshold below which an expectation value counts as zero.
pub const ZERO_TOL: f64 = 1e-9;

/// `Δ = 2|ad − bc|`.
pub fn concurrence(s: &StateVector) -> f64 {
    let [a, b, c, d] = *s.amplitudes();
    (2.0 * (a * d - b * c).norm()).min(1.0)
}

/// `M₂ = −ln(Σ_P ⟨P⟩⁴ / 4)` from 16 expectation values.
pub fn m2_from_expectations(values: &[f64; 16]) -> f64 {
    let sum: f64 = values.iter().map(|v| v.powi(4)).sum();
    let m = -(sum / 4.0).max(1e-300).ln();
    if m < 0.0 && m >= -1e-12 {
        0.0
    } else {
        m
    }
}

/// Magic computed from the amplitudes through all 16 Pauli expectations.
pub fn m2_direct(s: &StateVector) -> f64 {
    m2_from_expectations(&s.expectations())
}

/// The 16 expectations `⟨P₁⊗P₂⟩`, indexed in [`PauliString::ALL`] order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpectationTable {
    pub values: [f64; 16],
}

impl ExpectationTable {
    pub fn of_state(s: &StateVector) -> Self {
        Self { values: s.expectations() }
    }

    pub fn get(&self, p: PauliString) -> f64 {
        self.values[p.index()]
    }

    pub fn m2(&self) -> f64 {
        m2_from_expectations(&self.values)
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    pub fn max_deviation(&self, other: &ExpectationTable) -> f64 {
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Sines and cosines of the six angles.
#[derive(Clone, Copy, Debug)]
pub(crate) struct AngleTrig {
    pub chi: (f64, f64),
    pub theta1: (f64, f64),
    pub theta2: (f64, f64),
    pub phi1: (f64, f64),
    pub phi2: (f64, f64),
    pub gamma: (f64, f64),
}

impl AngleTrig {
    pub fn of(w: &WhartonAngles) -> Self {
        Self {
            chi: w.chi.sin_cos(),
            theta1: w.theta1.sin_cos(),
            theta2: w.theta2.sin_cos(),
            phi1: w.phi1.sin_cos(),
            phi2: w.phi2.sin_cos(),
            gamma: w.gamma.sin_cos(),
        }
    }
}

pub(crate) fn expectations_from_trig(t: &AngleTrig) -> [f64; 16] {
    let (sx, cx) = t.chi;
    let (s1, c1) = t.theta1;
    let (s2, c2) = t.theta2;
    let (sp1, cp1) = t.phi1;
    let (sp2, cp2) = t.phi2;
    let (sg, cg) = t.gamma;

    let xi = cx * s1 * cp1;
    let yi = cx * s1 * sp1;
    let zi = cx * c1;
    let ix = cx * s2 * cp2;
    let iy = cx * s2 * sp2;
    let iz = cx * c2;

    let xx = sx * (c1 * c2 * cp1 * cp2 * cg + c1 * cp1 * sp2 * sg + c2 * sp1 * cp2 * sg - sp1 * sp2 * cg)
        + s1 * s2 * cp1 * cp2;
    let yy = sx * (c1 * c2 * sp1 * sp2 * cg - c1 * sp1 * cp2 * sg - c2 * cp1 * sp2 * sg - cp1 * cp2 * cg)
        + s1 * s2 * sp1 * sp2;
    let zz = sx * s1 * s2 * cg + c1 * c2;
    let xy = sx * (c1 * c2 * cp1 * sp2 * cg - c1 * cp1 * cp2 * sg + c2 * sp1 * sp2 * sg + sp1 * cp2 * cg)
        + s1 * s2 * cp1 * sp2;
    let yx = sx * (c1 * c2 * sp1 * cp2 * cg + c1 * sp1 * sp2 * sg - c2 * cp1 * cp2 * sg + cp1 * sp2 * cg)
        + s1 * s2 * sp1 * cp2;
    let xz = -sx * (c1 * s2 * cp1 * cg + s2 * sp1 * sg) + s1 * c2 * cp1;
    let zx = -sx * (s1 * c2 * cp2 * cg + s1 * sp2 * sg) + c1 * s2 * cp2;
    let yz = sx * (-c1 * s2 * sp1 * cg + s2 * cp1 * sg) + s1 * c2 * sp1;
    let zy = sx * (-s1 * c2 * sp2 * cg + s1 * cp2 * sg) + c1 * s2 * sp2;

    [
        1.0, ix, iy, iz, //
        xi, xx, xy, xz, //
        yi, yx, yy, yz, //
        zi, zx, zy, zz,
    ]
}

/// Closed-form expectations as trigonometric polynomials in the six angles.
pub fn expectation_table(w: &WhartonAngles) -> ExpectationTable {
    ExpectationTable { values: expectations_from_trig(&AngleTrig::of(w)) }
}

pub fn m2_analytic(w: &WhartonAngles) -> f64 {
    expectation_table(w).m2()
}

/// Which of the 16 expectations vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZeroPattern {
    mask: u16,
}

impl ZeroPattern {
    pub fn from_strings(zeros: &[PauliString]) -> Self {
        let mask = zeros.iter().fold(0u16, |m, p| m | (1 << p.index()));
        Self { mask }
    }

    pub fn is_zero(&self, p: PauliString) -> bool {
        self.mask & (1 << p.index()) != 0
    }

    pub fn zero_count(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn zeros(&self) -> Vec<PauliString> {
        PauliString::ALL.into_iter().filter(|p| self.is_zero(*p)).collect()
    }

    pub fn bits(&self) -> u16 {
        self.mask
    }
}

impl fmt::Display for ZeroPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.zeros().iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// Mark every entry with `|value| < tol`. The identity entry is never zero.
pub fn zero_pattern(t: &ExpectationTable, tol: f64) -> ZeroPattern {
    let mut mask = 0u16;
    for (i, v) in t.values.iter().enumerate().skip(1) {
        if v.abs() < tol {
            mask |= 1 << i;
        }
    }
    ZeroPattern { mask }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::angles_to_state;
    use num_complex::Complex64 as C64;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn strings(names: &[&str]) -> Vec<PauliString> {
        names.iter().map(|n| n.parse().unwrap()).collect()
    }

    fn angles(t1: f64, p1: f64, t2: f64, p2: f64, chi: f64, g: f64) -> WhartonAngles {
        WhartonAngles::new(t1, p1, t2, p2, chi, g).unwrap()
    }

    #[test]
    fn concurrence_examples() {
        assert_eq!(concurrence(&StateVector::basis(0)), 0.0);
        let bell = StateVector::new(C64::new(1.0, 0.0), 0.0.into(), 0.0.into(), C64::new(1.0, 0.0)).unwrap();
        assert!((concurrence(&bell) - 1.0).abs() < 1e-15);
        let s = StateVector::new(C64::new(3f64.sqrt(), 0.0), 0.0.into(), 0.0.into(), C64::new(1.0, 0.0)).unwrap();
        assert!((concurrence(&s) - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn stabilizer_states_have_no_magic() {
        assert_eq!(m2_direct(&StateVector::basis(0)), 0.0);
        let bell = StateVector::new(C64::new(1.0, 0.0), 0.0.into(), 0.0.into(), C64::new(1.0, 0.0)).unwrap();
        assert!(m2_direct(&bell).abs() < 1e-15);
        assert_eq!(m2_analytic(&angles(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)), 0.0);
    }

    #[test]
    fn product_of_single_qubit_magic_states() {
        // Bloch vectors along (±1, ±1, ±1)/√3 on each qubit.
        let alpha = (1.0 / 3f64.sqrt()).acos();
        let w = angles(alpha, FRAC_PI_4, alpha, FRAC_PI_4, 0.0, PI / 3.0);
        assert!((m2_direct(&angles_to_state(&w)) - (9.0f64 / 4.0).ln()).abs() < 1e-12);
    }

    #[test]
    fn zero_angle_table() {
        let t = expectation_table(&angles(0.0, 0.0, 0.0, 0.0, 0.0, 0.0));
        for (name, v) in [("ZI", 1.0), ("IZ", 1.0), ("ZZ", 1.0), ("XI", 0.0), ("IY", 0.0)] {
            assert_eq!(t.get(name.parse().unwrap()), v, "{name}");
        }
        // every string with an X or Y factor vanishes on |00⟩: 12 zeros
        let p = zero_pattern(&t, ZERO_TOL);
        assert_eq!(p.zero_count(), 12);
        for z in p.zeros() {
            let s = z.to_string();
            assert!(s.contains('X') || s.contains('Y'), "{s}");
        }
    }

    #[test]
    fn abc_row17_table() {
        for chi in [0.3, 0.6, 0.9, 1.2, 1.5] {
            for (p1, p2, g) in [(0.0, 0.0, 0.0), (PI, 0.0, PI), (0.0, PI, PI)] {
                let t = expectation_table(&angles(FRAC_PI_2, p1, FRAC_PI_2, p2, chi, g));
                let pat = zero_pattern(&t, ZERO_TOL);
                let expected = strings(&["IY", "IZ", "XY", "XZ", "YI", "YX", "YZ", "ZI", "ZX", "ZY"]);
                assert_eq!(pat, ZeroPattern::from_strings(&expected));
                let abs = |n: &str| t.get(n.parse().unwrap()).abs();
                assert!((abs("XX") - 1.0).abs() < 1e-14);
                assert!((abs("XI") - chi.cos()).abs() < 1e-14);
                assert!((abs("IX") - chi.cos()).abs() < 1e-14);
                assert!((abs("YY") - chi.sin()).abs() < 1e-14);
                assert!((abs("ZZ") - chi.sin()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn abc_row17_magic_at_quarter_pi() {
        let w = angles(FRAC_PI_2, 0.0, FRAC_PI_2, 0.0, FRAC_PI_4, 0.0);
        assert!((m2_analytic(&w) - (4.0f64 / 3.0).ln()).abs() < 1e-12);
    }

    #[test]
    fn gfe_row0_table() {
        let q = FRAC_PI_4;
        let w = angles(q, FRAC_PI_2, q, FRAC_PI_2, FRAC_PI_2, FRAC_PI_2);
        assert!((m2_analytic(&w) - (16.0f64 / 9.0).ln()).abs() < 1e-12);
        let generic = w.with_chi(0.9);
        let pat = zero_pattern(&expectation_table(&generic), ZERO_TOL);
        assert_eq!(pat, ZeroPattern::from_strings(&strings(&["IX", "XI", "XX"])));
    }

    #[test]
    fn ihg_row0_groups() {
        let alpha = (1.0 / 3f64.sqrt()).acos();
        let chi = 0.45;
        let t = expectation_table(&angles(alpha, FRAC_PI_4, alpha, FRAC_PI_4, chi, PI / 3.0));
        let p4 = |n: &str| t.get(n.parse().unwrap()).powi(4);
        assert!((p4("XI") - chi.cos().powi(4) / 9.0).abs() < 1e-14);
        assert!((p4("YY") - (2.0 * chi.sin() - 1.0).powi(4) / 81.0).abs() < 1e-14);
        assert!((p4("XX") - (chi.sin() + 1.0).powi(4) / 81.0).abs() < 1e-14);
    }

    #[test]
    fn identity_entry_never_zero() {
        let t = ExpectationTable { values: [0.0; 16] };
        assert!(!zero_pattern(&t, 1.0).is_zero(PauliString::ALL[0]));
        assert_eq!(zero_pattern(&t, 1.0).zero_count(), 15);
    }

    #[test]
    fn m2_clamps_tiny_negatives() {
        let mut v = [0.0; 16];
        v[0] = 1.0;
        v[5] = 1.0;
        v[10] = 1.0;
        v[15] = 1.0 + 1e-15;
        assert_eq!(m2_from_expectations(&v), 0.0);
    }
}
