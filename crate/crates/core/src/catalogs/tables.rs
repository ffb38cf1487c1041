//! Angle tables for every extremal family.
//!
//! Values are written exactly as π-fractions; `±x` entries become two
//! entries and are normalized modulo 2π when a [`WhartonAngles`] is built.
//!
//! [`WhartonAngles`]: crate::params::WhartonAngles

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

/// `arccos(1/√3)`: polar angle whose Bloch vector has equal |x|, |y|, |z|.
pub const MAGIC_POLAR: f64 = 0.955_316_618_124_509_2;

const Q1: f64 = FRAC_PI_4;
const Q3: f64 = 3.0 * FRAC_PI_4;
const H1: f64 = FRAC_PI_2;
const H3: f64 = 3.0 * FRAC_PI_2;

pub(crate) const QUARTERS: &[f64] = &[Q1, Q3];
pub(crate) const EQUATOR: &[f64] = &[H1];
pub(crate) const HALVES_ODD: &[f64] = &[H1, H3];
pub(crate) const HALVES_EVEN: &[f64] = &[0.0, PI];
pub(crate) const DIAGONALS: &[f64] = &[Q1, -Q1, Q3, -Q3];

// ---------------------------------------------------------------------------
// Minimal magic (ABC)

/// How a polar angle is fixed on an ABC row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolarSpec {
    /// `θ = nπ`, `n ∈ {0, 1}`; the matching azimuth is then free.
    Pole,
    /// `θ = π/2`.
    Equator,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AzimuthSpec {
    /// Any value; only reachable at a pole.
    Free,
    /// `center ± π/2`.
    Pair(f64),
}

/// Whether `γ` follows the free azimuths as `(−1)ⁿ φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaTie {
    Signed,
    /// Drops the dependence on the free azimuths. Not a real row; used as a
    /// negative control for the collapse check.
    Ignored,
}

/// One row of the minimal-magic table. `γ = base ± π/2 + Σ (−1)ⁿ φ_free`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AbcRow {
    pub row: usize,
    pub mnemonic: &'static str,
    pub theta1: PolarSpec,
    pub theta2: PolarSpec,
    pub phi1: AzimuthSpec,
    pub phi2: AzimuthSpec,
    pub gamma_base: f64,
    pub tie: GammaTie,
}

impl AbcRow {
    pub fn has_free_angle(&self) -> bool {
        matches!(self.phi1, AzimuthSpec::Free) || matches!(self.phi2, AzimuthSpec::Free)
    }
}

const fn abc(
    row: usize,
    mnemonic: &'static str,
    theta1: PolarSpec,
    theta2: PolarSpec,
    phi1: AzimuthSpec,
    phi2: AzimuthSpec,
    gamma_base: f64,
) -> AbcRow {
    AbcRow { row, mnemonic, theta1, theta2, phi1, phi2, gamma_base, tie: GammaTie::Signed }
}

use AzimuthSpec::{Free, Pair};
use PolarSpec::{Equator as Eqt, Pole};

/// `Pair(0)` is `±π/2`; `Pair(π/2)` is `{0, π}`.
const PM: AzimuthSpec = Pair(0.0);
const ZP: AzimuthSpec = Pair(FRAC_PI_2);

pub const ABC_ROWS: [AbcRow; 18] = [
    abc(0, "ss---", Pole, Pole, Free, Free, 0.0),
    abc(1, "csc--", Eqt, Pole, PM, Free, H1),
    abc(2, "ss---", Pole, Pole, Free, Free, H1),
    abc(3, "csc--", Eqt, Pole, PM, Free, 0.0),
    abc(4, "css--", Eqt, Pole, ZP, Free, H1),
    abc(5, "css--", Eqt, Pole, ZP, Free, 0.0),
    abc(6, "sc-c-", Pole, Eqt, Free, PM, H1),
    abc(7, "ccccc", Eqt, Eqt, PM, PM, 0.0),
    abc(8, "sc-c-", Pole, Eqt, Free, PM, 0.0),
    abc(9, "ccccs", Eqt, Eqt, PM, PM, H1),
    abc(10, "ccscc", Eqt, Eqt, ZP, PM, 0.0),
    abc(11, "ccscs", Eqt, Eqt, ZP, PM, H1),
    abc(12, "sc-s-", Pole, Eqt, Free, ZP, H1),
    abc(13, "cccsc", Eqt, Eqt, PM, ZP, 0.0),
    abc(14, "sc-s-", Pole, Eqt, Free, ZP, 0.0),
    abc(15, "cccss", Eqt, Eqt, PM, ZP, H1),
    abc(16, "ccssc", Eqt, Eqt, ZP, ZP, 0.0),
    abc(17, "ccsss", Eqt, Eqt, ZP, ZP, H1),
];

// ---------------------------------------------------------------------------
// Maximal magic, middle (GFE) and right (ED) branches

/// A row given as a Cartesian product of value sets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SetRow {
    pub row: usize,
    pub code: &'static str,
    pub theta1: &'static [f64],
    pub theta2: &'static [f64],
    pub phi1: &'static [f64],
    pub phi2: &'static [f64],
    /// Nominal recurrence angles; ED shifts each by `±δ(Δ)`.
    pub gamma: &'static [f64],
}

const fn set_row(
    row: usize,
    code: &'static str,
    theta1: &'static [f64],
    theta2: &'static [f64],
    phi1: &'static [f64],
    phi2: &'static [f64],
    gamma: &'static [f64],
) -> SetRow {
    SetRow { row, code, theta1, theta2, phi1, phi2, gamma }
}

pub const GFE_ROWS: [SetRow; 9] = [
    set_row(0, "--ccc", QUARTERS, QUARTERS, HALVES_ODD, HALVES_ODD, HALVES_ODD),
    set_row(1, "--scc", QUARTERS, QUARTERS, HALVES_EVEN, HALVES_ODD, HALVES_ODD),
    set_row(2, "c--cs", EQUATOR, QUARTERS, DIAGONALS, HALVES_ODD, HALVES_EVEN),
    set_row(3, "--csc", QUARTERS, QUARTERS, HALVES_ODD, HALVES_EVEN, HALVES_ODD),
    set_row(4, "--ssc", QUARTERS, QUARTERS, HALVES_EVEN, HALVES_EVEN, HALVES_ODD),
    set_row(5, "c--ss", EQUATOR, QUARTERS, DIAGONALS, HALVES_EVEN, HALVES_EVEN),
    set_row(6, "-cc-s", QUARTERS, EQUATOR, HALVES_ODD, DIAGONALS, HALVES_EVEN),
    set_row(7, "-cs-s", QUARTERS, EQUATOR, HALVES_EVEN, DIAGONALS, HALVES_EVEN),
    set_row(8, "cc--c", EQUATOR, EQUATOR, DIAGONALS, DIAGONALS, HALVES_ODD),
];

// ---------------------------------------------------------------------------
// Maximal magic, left branch (IHG)

/// Compact form: fixed polar angles, both azimuths over the four diagonals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IhgRow {
    pub row: usize,
    pub theta1: f64,
    pub theta2: f64,
    pub gamma: &'static [f64],
}

const THIRDS_ODD: &[f64] = &[FRAC_PI_3, PI, 5.0 * FRAC_PI_3];
const THIRDS_EVEN: &[f64] = &[0.0, 2.0 * FRAC_PI_3, 4.0 * FRAC_PI_3];
const A: f64 = MAGIC_POLAR;
const B: f64 = PI - MAGIC_POLAR;

pub const IHG_ROWS: [IhgRow; 4] = [
    IhgRow { row: 0, theta1: A, theta2: A, gamma: THIRDS_ODD },
    IhgRow { row: 1, theta1: B, theta2: B, gamma: THIRDS_ODD },
    IhgRow { row: 2, theta1: A, theta2: B, gamma: THIRDS_EVEN },
    IhgRow { row: 3, theta1: B, theta2: A, gamma: THIRDS_EVEN },
];

/// `φ₂` relative to `φ₁` in the expanded IHG listing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Azimuth2 {
    /// `{φ₁, φ₁ + π}`
    Aligned,
    /// `{φ₁ + π/2, φ₁ − π/2}`
    Perpendicular,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IhgGamma {
    Fixed(f64),
    /// First value when `φ₁ ∈ {π/4, 5π/4}`, second when `φ₁ ∈ {3π/4, 7π/4}`.
    ByDiagonal(f64, f64),
}

/// Which polar pairs a case covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolarPairs {
    /// `θ₂ = θ₁`, `θ₁ ∈ {α, π−α}`
    Equal,
    /// `θ₂ = π − θ₁`, `θ₁ ∈ {α, π−α}`
    Opposite,
    Single(u8),
}

/// Single polar pairs, numbered for `PolarPairs::Single`.
pub(crate) const POLAR_PAIRS: [(f64, f64); 4] = [(A, A), (B, B), (A, B), (B, A)];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IhgCase {
    pub row: usize,
    pub label: &'static str,
    pub polar: PolarPairs,
    pub phi2: Azimuth2,
    pub gamma: IhgGamma,
}

const T1: f64 = FRAC_PI_3;
const T2: f64 = 2.0 * FRAC_PI_3;
const T4: f64 = 4.0 * FRAC_PI_3;
const T5: f64 = 5.0 * FRAC_PI_3;

const fn case(row: usize, label: &'static str, polar: PolarPairs, phi2: Azimuth2, gamma: IhgGamma) -> IhgCase {
    IhgCase { row, label, polar, phi2, gamma }
}

use Azimuth2::{Aligned as Al, Perpendicular as Pp};
use IhgGamma::{ByDiagonal as Dg, Fixed};
use PolarPairs::{Equal, Opposite, Single};

/// Expanded listing; `row` is the zero-pattern index at point H.
pub const IHG_CASES: [IhgCase; 20] = [
    case(0, "0a", Equal, Pp, Fixed(PI)),
    case(0, "0b", Opposite, Al, Fixed(0.0)),
    case(1, "1a", Single(0), Al, Dg(T5, T1)),
    case(1, "1b", Single(1), Al, Dg(T1, T5)),
    case(1, "1c", Single(2), Pp, Dg(T2, T4)),
    case(1, "1d", Single(3), Pp, Dg(T4, T2)),
    case(2, "2a", Equal, Al, Fixed(PI)),
    case(2, "2b", Opposite, Pp, Fixed(0.0)),
    case(3, "3a", Single(0), Pp, Dg(T5, T1)),
    case(3, "3b", Single(1), Pp, Dg(T1, T5)),
    case(3, "3c", Single(2), Al, Dg(T2, T4)),
    case(3, "3d", Single(3), Al, Dg(T4, T2)),
    case(4, "4a", Single(0), Pp, Dg(T1, T5)),
    case(4, "4b", Single(1), Pp, Dg(T5, T1)),
    case(4, "4c", Single(2), Al, Dg(T4, T2)),
    case(4, "4d", Single(3), Al, Dg(T2, T4)),
    case(5, "5a", Single(0), Al, Dg(T1, T5)),
    case(5, "5b", Single(1), Al, Dg(T5, T1)),
    case(5, "5c", Single(2), Pp, Dg(T4, T2)),
    case(5, "5d", Single(3), Pp, Dg(T2, T4)),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn magic_polar_value() {
        assert!((MAGIC_POLAR - (1.0 / 3f64.sqrt()).acos()).abs() < 1e-16);
        assert!((MAGIC_POLAR.sin() - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn mnemonics_match_specs() {
        // s/c marks which of sin or cos vanishes for θ₁, θ₂, φ₁, φ₂, γ.
        for r in ABC_ROWS {
            let m: Vec<char> = r.mnemonic.chars().collect();
            assert_eq!(m.len(), 5);
            let polar = |p: PolarSpec| if p == Pole { 's' } else { 'c' };
            let azim = |a: AzimuthSpec| match a {
                Free => '-',
                Pair(c) if c == 0.0 => 'c',
                Pair(_) => 's',
            };
            assert_eq!(m[0], polar(r.theta1), "row {}", r.row);
            assert_eq!(m[1], polar(r.theta2), "row {}", r.row);
            assert_eq!(m[2], azim(r.phi1), "row {}", r.row);
            assert_eq!(m[3], azim(r.phi2), "row {}", r.row);
            if m[4] != '-' {
                let g = if r.gamma_base == 0.0 { 'c' } else { 's' };
                assert_eq!(m[4], g, "row {}", r.row);
            }
        }
    }

    #[test]
    fn every_abc_row_has_three_binary_choices() {
        for r in ABC_ROWS {
            let binary = [r.theta1, r.theta2].iter().filter(|p| **p == Pole).count()
                + [r.phi1, r.phi2].iter().filter(|a| matches!(a, Pair(_))).count()
                + 1;
            assert_eq!(binary, 3, "row {}", r.row);
        }
    }

    #[test]
    fn appendix_cases_cover_32_per_row() {
        let mut per_row = [0usize; 6];
        for c in IHG_CASES {
            let pairs = match c.polar {
                Equal | Opposite => 2,
                Single(_) => 1,
            };
            per_row[c.row] += pairs * DIAGONALS.len() * 2;
        }
        assert_eq!(per_row, [32; 6]);
    }
}
