//! Closed-form Pareto boundaries of magic at fixed concurrence.
//!
//! The minimal-magic boundary is a single curve (ABC). The maximal-magic
//! boundary is piecewise: IHG for `Δ ≤ Δ_G`, GFE up to `Δ_E = √(3/4)`, and ED
//! beyond, where the recurrence angle detaches from its lattice value by
//! [`gamma_shift`].

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::{Error, Result};

/// Location of point E, where GFE and ED touch tangentially.
pub const DELTA_E: f64 = 0.866_025_403_784_438_6;
/// Points B and F.
pub const DELTA_B: f64 = FRAC_1_SQRT_2;
pub const DELTA_F: f64 = FRAC_1_SQRT_2;
/// Point H.
pub const DELTA_H: f64 = 0.5;

const DOMAIN_SLACK: f64 = 1e-12;
const BISECTION_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Abc,
    Ihg,
    Gfe,
    Ed,
}

impl Branch {
    pub const ALL: [Branch; 4] = [Branch::Abc, Branch::Ihg, Branch::Gfe, Branch::Ed];

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Abc => "ABC",
            Branch::Ihg => "IHG",
            Branch::Gfe => "GFE",
            Branch::Ed => "ED",
        }
    }

    /// The closed-form curve for this branch, evaluated anywhere in `[0, 1]`.
    pub fn curve(self, delta: f64) -> Result<f64> {
        match self {
            Branch::Abc => f_abc(delta),
            Branch::Ihg => f_ihg(delta),
            Branch::Gfe => f_gfe(delta),
            Branch::Ed => f_ed(delta),
        }
    }

    /// Concurrence interval on which this branch is the actual frontier.
    pub fn frontier_domain(self) -> (f64, f64) {
        match self {
            Branch::Abc => (0.0, 1.0),
            Branch::Ihg => (0.0, delta_g()),
            Branch::Gfe => (delta_g(), DELTA_E),
            Branch::Ed => (DELTA_E, 1.0),
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Branch {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "ABC" => Ok(Branch::Abc),
            "IHG" => Ok(Branch::Ihg),
            "GFE" => Ok(Branch::Gfe),
            "ED" => Ok(Branch::Ed),
            other => Err(format!("unknown branch {other:?} (expected ABC, IHG, GFE or ED)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrontierPoint {
    pub delta: f64,
    pub m2: f64,
    pub branch: Branch,
}

fn check_unit(delta: f64) -> Result<f64> {
    if delta.is_finite() && (-DOMAIN_SLACK..=1.0 + DOMAIN_SLACK).contains(&delta) {
        Ok(delta.clamp(0.0, 1.0))
    } else {
        Err(Error::domain("delta", delta, "[0, 1]"))
    }
}

/// Minimal magic, `−ln(Δ⁴ − Δ² + 1)`.
pub fn f_abc(delta: f64) -> Result<f64> {
    let d = check_unit(delta)?;
    let d2 = d * d;
    Ok(-(d2 * d2 - d2 + 1.0).ln())
}

/// `ln(9 / (3Δ⁴ − 2Δ³ + 4))`.
pub fn f_ihg(delta: f64) -> Result<f64> {
    let d = check_unit(delta)?;
    Ok((9.0 / (3.0 * d.powi(4) - 2.0 * d.powi(3) + 4.0)).ln())
}

/// `ln(16 / (8Δ⁴ − 8Δ² + 9))`.
pub fn f_gfe(delta: f64) -> Result<f64> {
    let d = check_unit(delta)?;
    let d2 = d * d;
    Ok((16.0 / (8.0 * d2 * d2 - 8.0 * d2 + 9.0)).ln())
}

/// `ln(18 / (7Δ⁴ − 6Δ² + 9))`.
pub fn f_ed(delta: f64) -> Result<f64> {
    let d = check_unit(delta)?;
    let d2 = d * d;
    Ok((18.0 / (7.0 * d2 * d2 - 6.0 * d2 + 9.0)).ln())
}

/// Analytic `d f / dΔ` for each branch curve.
pub fn slope(branch: Branch, delta: f64) -> Result<f64> {
    let d = check_unit(delta)?;
    let (num, den) = match branch {
        Branch::Abc => (4.0 * d.powi(3) - 2.0 * d, d.powi(4) - d * d + 1.0),
        Branch::Ihg => (12.0 * d.powi(3) - 6.0 * d * d, 3.0 * d.powi(4) - 2.0 * d.powi(3) + 4.0),
        Branch::Gfe => (32.0 * d.powi(3) - 16.0 * d, 8.0 * d.powi(4) - 8.0 * d * d + 9.0),
        Branch::Ed => (28.0 * d.powi(3) - 12.0 * d, 7.0 * d.powi(4) - 6.0 * d * d + 9.0),
    };
    Ok(-num / den)
}

/// Upper frontier. At the joints the left branch supplies the label.
pub fn m2_max(delta: f64) -> Result<FrontierPoint> {
    let d = check_unit(delta)?;
    let (m2, branch) = if d <= delta_g() {
        (f_ihg(d)?, Branch::Ihg)
    } else if d <= DELTA_E {
        (f_gfe(d)?, Branch::Gfe)
    } else {
        (f_ed(d)?, Branch::Ed)
    };
    Ok(FrontierPoint { delta: d, m2, branch })
}

pub fn m2_min(delta: f64) -> Result<FrontierPoint> {
    let d = check_unit(delta)?;
    Ok(FrontierPoint { delta: d, m2: f_abc(d)?, branch: Branch::Abc })
}

/// `24Δ⁴ + 32Δ³ − 72Δ² + 17`, whose zeros are the IHG/GFE crossings.
pub fn crossing_quartic(d: f64) -> f64 {
    ((24.0 * d + 32.0) * d - 72.0) * d * d + 17.0
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuarticRoots {
    /// Point G.
    pub primary: f64,
    /// The second crossing of the extended IHG and GFE curves, inside ED's range.
    pub secondary: f64,
}

/// Plain bisection on a sign-changing bracket.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let (mut f_lo, f_hi) = (f(lo), f(hi));
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || !f_lo.is_finite() || !f_hi.is_finite() {
        return Err(Error::ConvergenceFailure { lo, hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn solve_delta_g() -> Result<QuarticRoots> {
    Ok(QuarticRoots {
        primary: bisect(crossing_quartic, 0.5, 0.71, BISECTION_TOL)?,
        secondary: bisect(crossing_quartic, 0.95, 1.0, BISECTION_TOL)?,
    })
}

/// `Δ_G`, computed once.
pub fn delta_g() -> f64 {
    static CELL: OnceLock<f64> = OnceLock::new();
    *CELL.get_or_init(|| {
        solve_delta_g()
            .expect("the IHG/GFE quartic changes sign on [0.5, 0.71]")
            .primary
    })
}

/// Shift of the recurrence angle away from its lattice value on the ED branch:
/// `δ(Δ) = π/2 − arccos √((4 − 3/Δ²)/9)`.
pub fn gamma_shift(delta: f64) -> Result<f64> {
    if !(delta.is_finite() && delta >= DELTA_E - DOMAIN_SLACK && delta <= 1.0 + DOMAIN_SLACK) {
        return Err(Error::domain("delta", delta, "[sqrt(3/4), 1]"));
    }
    let d = delta.clamp(DELTA_E, 1.0);
    let cos2 = ((4.0 - 3.0 / (d * d)) / 9.0).max(0.0);
    Ok(FRAC_PI_2 - cos2.sqrt().acos())
}

/// Magic of the GFE row-0 family with `γ` left free.
pub fn m2_of_gamma(chi: f64, gamma: f64) -> f64 {
    let (s, c) = chi.sin_cos();
    let (sg, cg) = gamma.sin_cos();
    let (s2, c2) = (s * s, c * c);
    let (sg2, cg2) = (sg * sg, cg * cg);
    let sum = 1.25 + c2 * c2 + s2 * s2 * (sg2 * sg2 + 1.25 * cg2 * cg2) + 1.5 * s2 * cg2;
    -(sum / 4.0).ln()
}

/// The labelled features along both frontiers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpecialPoints {
    pub delta_b: f64,
    pub delta_f: f64,
    pub delta_h: f64,
    pub delta_e: f64,
    pub delta_g: f64,
    pub delta_crossing: f64,
    pub m2_b: f64,
    pub m2_f: f64,
    pub m2_h: f64,
    pub m2_e: f64,
    pub m2_g: f64,
    pub m2_crossing: f64,
    /// Point I (separable, maximal magic).
    pub m2_i: f64,
    /// Point D (maximally entangled, maximal magic).
    pub m2_d: f64,
}

impl SpecialPoints {
    pub fn compute() -> Result<Self> {
        let roots = solve_delta_g()?;
        Ok(Self {
            delta_b: DELTA_B,
            delta_f: DELTA_F,
            delta_h: DELTA_H,
            delta_e: DELTA_E,
            delta_g: roots.primary,
            delta_crossing: roots.secondary,
            m2_b: f_abc(DELTA_B)?,
            m2_f: f_gfe(DELTA_F)?,
            m2_h: f_ihg(DELTA_H)?,
            m2_e: f_gfe(DELTA_E)?,
            m2_g: f_ihg(roots.primary)?,
            m2_crossing: f_ihg(roots.secondary)?,
            m2_i: f_ihg(0.0)?,
            m2_d: f_ed(1.0)?,
        })
    }
}
