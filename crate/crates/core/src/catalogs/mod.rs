//! Explicit catalogs of the extremal states on each frontier branch.
//!
//! Each catalog is generated from its angle table by full Cartesian
//! expansion of the `±` and set-valued entries. Entries keep the angles;
//! amplitudes are derived on demand. Distinctness is always judged on
//! physical states (fidelity), never on angle tuples.

pub mod tables;

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::frontiers::{delta_g, gamma_shift, Branch, DELTA_E};
use crate::measures::{expectation_table, m2_analytic, m2_direct, zero_pattern, ZeroPattern, ZERO_TOL};
use crate::params::{angles_to_state, WhartonAngles};
use crate::state::{distinct_states, StateVector};
use crate::{Error, Result};

use tables::{
    AbcRow, Azimuth2, AzimuthSpec, GammaTie, IhgGamma, PolarPairs, PolarSpec, SetRow, ABC_ROWS, DIAGONALS,
    GFE_ROWS, IHG_CASES, IHG_ROWS, POLAR_PAIRS,
};

const DOMAIN_SLACK: f64 = 1e-12;

/// One extremal state.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub branch: Branch,
    /// Row in the source table; also the zero-pattern index.
    pub row: usize,
    /// Case within a row of the expanded IHG listing, e.g. `"5a"`.
    pub case_label: Option<&'static str>,
    pub angles: WhartonAngles,
    pub mnemonic: Option<&'static str>,
}

impl CatalogEntry {
    pub fn state(&self) -> StateVector {
        angles_to_state(&self.angles)
    }

    pub fn delta(&self) -> f64 {
        self.angles.chi.sin()
    }

    pub fn m2(&self) -> f64 {
        m2_analytic(&self.angles)
    }

    pub fn zero_pattern(&self) -> ZeroPattern {
        zero_pattern(&expectation_table(&self.angles), ZERO_TOL)
    }
}

fn angles(t1: f64, p1: f64, t2: f64, p2: f64, chi: f64, g: f64) -> WhartonAngles {
    WhartonAngles::new(t1, p1, t2, p2, chi, g).expect("catalog angles are in range")
}

fn check_chi(chi: f64) -> Result<()> {
    if chi.is_finite() && (0.0..=FRAC_PI_2).contains(&chi) {
        Ok(())
    } else {
        Err(Error::domain("chi", chi, "[0, pi/2]"))
    }
}

fn check_delta_range(chi: f64, lo: f64, hi: f64, domain: &'static str) -> Result<()> {
    check_chi(chi)?;
    let d = chi.sin();
    if d < lo - DOMAIN_SLACK || d > hi + DOMAIN_SLACK {
        return Err(Error::domain("sin(chi)", d, domain));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// ABC

/// Expand one minimal-magic row. `free` supplies the values of the free
/// azimuths (ignored where the azimuth is fixed). Output order depends only
/// on the discrete choices, so two calls with different `free` line up.
pub fn expand_abc_row(row: &AbcRow, chi: f64, free: (f64, f64)) -> Vec<WhartonAngles> {
    let polar_choices = |p: PolarSpec| -> Vec<(f64, f64)> {
        // (θ, sign (−1)ⁿ)
        match p {
            PolarSpec::Pole => vec![(0.0, 1.0), (PI, -1.0)],
            PolarSpec::Equator => vec![(FRAC_PI_2, 0.0)],
        }
    };
    let azimuth_choices = |a: AzimuthSpec, free: f64| -> Vec<(f64, bool)> {
        match a {
            AzimuthSpec::Free => vec![(free, true)],
            AzimuthSpec::Pair(c) => vec![(c + FRAC_PI_2, false), (c - FRAC_PI_2, false)],
        }
    };
    let mut out = Vec::with_capacity(8);
    for (t1, n1) in polar_choices(row.theta1) {
        for (t2, n2) in polar_choices(row.theta2) {
            for (p1, free1) in azimuth_choices(row.phi1, free.0) {
                for (p2, free2) in azimuth_choices(row.phi2, free.1) {
                    for pm in [FRAC_PI_2, -FRAC_PI_2] {
                        let mut g = row.gamma_base + pm;
                        if row.tie == GammaTie::Signed {
                            if free1 {
                                g += n1 * p1;
                            }
                            if free2 {
                                g += n2 * p2;
                            }
                        }
                        out.push(angles(t1, p1, t2, p2, chi, g));
                    }
                }
            }
        }
    }
    out
}

/// The 144 minimal-magic states (18 rows × 8). Free azimuths take the value 0.
pub fn abc_catalog(chi: f64) -> Result<Vec<CatalogEntry>> {
    check_chi(chi)?;
    if chi <= 0.0 || chi >= FRAC_PI_2 {
        return Err(Error::domain("chi", chi, "(0, pi/2)"));
    }
    Ok(ABC_ROWS
        .iter()
        .flat_map(|r| {
            expand_abc_row(r, chi, (0.0, 0.0)).into_iter().map(move |a| CatalogEntry {
                branch: Branch::Abc,
                row: r.row,
                case_label: None,
                angles: a,
                mnemonic: Some(r.mnemonic),
            })
        })
        .collect())
}

/// Check that a row's apparent free azimuths do not generate new states:
/// for `samples` random draws (with `γ` tied by the row formula), every
/// expanded state must coincide with its canonical (free = 0) counterpart.
///
/// Vacuously true for rows without free azimuths.
pub fn free_angle_collapse_check(row: &AbcRow, chi: f64, samples: usize, seed: u64) -> bool {
    let canonical: Vec<StateVector> = expand_abc_row(row, chi, (0.0, 0.0)).iter().map(angles_to_state).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).all(|_| {
        let free = (rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
        expand_abc_row(row, chi, free)
            .iter()
            .zip(canonical.iter())
            .all(|(a, c)| angles_to_state(a).same_ray(c))
    })
}

// ---------------------------------------------------------------------------
// GFE / ED

fn expand_set_row(branch: Branch, row: &SetRow, chi: f64, shift: Option<f64>) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for &t1 in row.theta1 {
        for &t2 in row.theta2 {
            for &p1 in row.phi1 {
                for &p2 in row.phi2 {
                    for &g in row.gamma {
                        let gammas: Vec<f64> = match shift {
                            None => vec![g],
                            Some(d) => vec![g + d, g - d],
                        };
                        for g in gammas {
                            out.push(CatalogEntry {
                                branch,
                                row: row.row,
                                case_label: None,
                                angles: angles(t1, p1, t2, p2, chi, g),
                                mnemonic: Some(row.code),
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// The 288 maximal-magic states of the middle branch (9 rows × 32).
pub fn gfe_catalog(chi: f64) -> Result<Vec<CatalogEntry>> {
    check_delta_range(chi, delta_g(), DELTA_E, "[Delta_G, sqrt(3/4)]")?;
    Ok(GFE_ROWS.iter().flat_map(|r| expand_set_row(Branch::Gfe, r, chi, None)).collect())
}

/// The 576 maximal-magic states of the right branch (9 rows × 64): the GFE
/// angles with each nominal `γ` split into `γ ± δ(sin χ)`.
pub fn ed_catalog(chi: f64) -> Result<Vec<CatalogEntry>> {
    check_delta_range(chi, DELTA_E, 1.0, "[sqrt(3/4), 1]")?;
    let shift = gamma_shift(chi.sin().max(DELTA_E))?;
    Ok(GFE_ROWS.iter().flat_map(|r| expand_set_row(Branch::Ed, r, chi, Some(shift))).collect())
}

// ---------------------------------------------------------------------------
// IHG

/// Both listings of the left-branch states.
#[derive(Clone, Debug, PartialEq)]
pub struct IhgCatalog {
    /// Four rows × 48, indexed by the compact table row.
    pub compact: Vec<CatalogEntry>,
    /// Six pattern rows × 32, labelled by case (`"0a"` … `"5d"`).
    pub expanded: Vec<CatalogEntry>,
}

impl IhgCatalog {
    /// Whether both listings describe the same set of physical states.
    pub fn listings_agree(&self) -> bool {
        let a: Vec<StateVector> = self.compact.iter().map(CatalogEntry::state).collect();
        let b: Vec<StateVector> = self.expanded.iter().map(CatalogEntry::state).collect();
        same_state_set(&a, &b)
    }
}

fn diagonal_gamma(phi1: f64, g: IhgGamma) -> f64 {
    match g {
        IhgGamma::Fixed(v) => v,
        IhgGamma::ByDiagonal(first, second) => {
            // φ₁ ∈ {π/4, 5π/4} ↔ tan φ₁ = +1
            if (phi1.sin() * phi1.cos()) > 0.0 {
                first
            } else {
                second
            }
        }
    }
}

fn ihg_compact(chi: f64) -> Vec<CatalogEntry> {
    let mut out = Vec::with_capacity(192);
    for r in IHG_ROWS {
        for &p1 in DIAGONALS {
            for &p2 in DIAGONALS {
                for &g in r.gamma {
                    out.push(CatalogEntry {
                        branch: Branch::Ihg,
                        row: r.row,
                        case_label: None,
                        angles: angles(r.theta1, p1, r.theta2, p2, chi, g),
                        mnemonic: None,
                    });
                }
            }
        }
    }
    out
}

fn ihg_expanded(chi: f64) -> Vec<CatalogEntry> {
    let mut out = Vec::with_capacity(192);
    for c in IHG_CASES {
        let pairs: Vec<(f64, f64)> = match c.polar {
            PolarPairs::Equal => vec![POLAR_PAIRS[0], POLAR_PAIRS[1]],
            PolarPairs::Opposite => vec![POLAR_PAIRS[2], POLAR_PAIRS[3]],
            PolarPairs::Single(i) => vec![POLAR_PAIRS[i as usize]],
        };
        for (t1, t2) in pairs {
            for &p1 in DIAGONALS {
                let p2s = match c.phi2 {
                    Azimuth2::Aligned => [p1, p1 + PI],
                    Azimuth2::Perpendicular => [p1 + FRAC_PI_2, p1 - FRAC_PI_2],
                };
                for p2 in p2s {
                    out.push(CatalogEntry {
                        branch: Branch::Ihg,
                        row: c.row,
                        case_label: Some(c.label),
                        angles: angles(t1, p1, t2, p2, chi, diagonal_gamma(p1, c.gamma)),
                        mnemonic: None,
                    });
                }
            }
        }
    }
    out
}

/// The 192 maximal-magic states of the left branch, in both listings.
pub fn ihg_catalog(chi: f64) -> Result<IhgCatalog> {
    check_delta_range(chi, 0.0, delta_g(), "[0, Delta_G]")?;
    Ok(IhgCatalog { compact: ihg_compact(chi), expanded: ihg_expanded(chi) })
}

// ---------------------------------------------------------------------------

/// Catalog for any branch; IHG uses the compact listing.
pub fn catalog(branch: Branch, chi: f64) -> Result<Vec<CatalogEntry>> {
    match branch {
        Branch::Abc => abc_catalog(chi),
        Branch::Ihg => Ok(ihg_catalog(chi)?.compact),
        Branch::Gfe => gfe_catalog(chi),
        Branch::Ed => ed_catalog(chi),
    }
}

/// True iff every state of each slice has a fidelity-1 partner in the other.
pub fn same_state_set(a: &[StateVector], b: &[StateVector]) -> bool {
    let covered = |xs: &[StateVector], ys: &[StateVector]| xs.iter().all(|x| ys.iter().any(|y| x.same_ray(y)));
    covered(a, b) && covered(b, a)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogReport {
    pub branch: Branch,
    pub chi: f64,
    pub count_generated: usize,
    pub count_distinct: usize,
    pub patterns_seen: BTreeSet<ZeroPattern>,
    /// Distinct zero counts across all entries.
    pub zero_counts: BTreeSet<usize>,
    /// Max over entries of `|M₂(entry) − f_branch(sin χ)|`, using both the
    /// closed-form and amplitude routes for `M₂`.
    pub frontier_residual_max: f64,
    /// IHG only: whether the compact and expanded listings agree.
    pub listings_agree: Option<bool>,
}

pub fn verify_catalog(branch: Branch, chi: f64) -> Result<CatalogReport> {
    let (entries, listings_agree) = match branch {
        Branch::Ihg => {
            let c = ihg_catalog(chi)?;
            let agree = c.listings_agree();
            (c.compact, Some(agree))
        }
        _ => (catalog(branch, chi)?, None),
    };
    let target = branch.curve(chi.sin())?;
    let states: Vec<StateVector> = entries.iter().map(CatalogEntry::state).collect();
    let mut residual = 0.0f64;
    let mut patterns = BTreeSet::new();
    let mut zero_counts = BTreeSet::new();
    for (e, s) in entries.iter().zip(states.iter()) {
        residual = residual.max((e.m2() - target).abs()).max((m2_direct(s) - target).abs());
        let p = e.zero_pattern();
        zero_counts.insert(p.zero_count());
        patterns.insert(p);
    }
    Ok(CatalogReport {
        branch,
        chi,
        count_generated: entries.len(),
        count_distinct: distinct_states(states.iter()).len(),
        patterns_seen: patterns,
        zero_counts,
        frontier_residual_max: residual,
        listings_agree,
    })
}
