//! CSV writers for catalogs, histograms, oracle runs and orbits.
//!
//! Floats are written with 17 significant digits so every value round-trips.

use std::io::{self, Write};

use crate::catalogs::CatalogEntry;
use crate::experiments::haar::Histogram2D;
use crate::experiments::oracle::OracleResult;
use crate::experiments::GENERATOR;
use crate::measures::{concurrence, m2_direct};
use crate::state::StateVector;

/// Format with 17 significant digits, trimming redundant trailing zeros.
/// Plain decimal for moderate magnitudes, exponent form otherwise.
pub fn fmt17(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub const CATALOG_HEADER: &str =
    "branch,row,case_label,theta1,theta2,phi1,phi2,chi,gamma,re_a,im_a,re_b,im_b,re_c,im_c,re_d,im_d,delta,m2";

fn amplitude_fields(s: &StateVector) -> String {
    s.amplitudes().iter().map(|z| format!("{},{}", fmt17(z.re), fmt17(z.im))).collect::<Vec<_>>().join(",")
}

pub fn catalog_row(e: &CatalogEntry) -> String {
    let w = &e.angles;
    let angles = [w.theta1, w.theta2, w.phi1, w.phi2, w.chi, w.gamma].map(fmt17).join(",");
    format!(
        "{},{},{},{},{},{},{}",
        e.branch,
        e.row,
        e.case_label.unwrap_or(""),
        angles,
        amplitude_fields(&e.state()),
        fmt17(e.delta()),
        fmt17(e.m2())
    )
}

pub fn write_catalog<W: Write>(out: &mut W, entries: &[CatalogEntry]) -> io::Result<()> {
    writeln!(out, "{CATALOG_HEADER}")?;
    for e in entries {
        writeln!(out, "{}", catalog_row(e))?;
    }
    Ok(())
}

/// Histogram CSV: a `#` metadata block, then every cell as `ix,iy,count`.
pub fn write_histogram<W: Write>(out: &mut W, h: &Histogram2D, tool: &str) -> io::Result<()> {
    writeln!(out, "# n={} bins={} seed={} ymax={}", h.n_samples, h.bins_x, h.seed, fmt17(h.y_max))?;
    writeln!(out, "# tool={tool} generator={GENERATOR} partitions={}", h.partitions)?;
    writeln!(out, "ix,iy,count")?;
    for ix in 0..h.bins_x {
        for iy in 0..h.bins_y {
            writeln!(out, "{ix},{iy},{}", h.count(ix, iy))?;
        }
    }
    Ok(())
}

pub const ORACLE_HEADER: &str = "delta,mode,m2_oracle,m2_analytic,abs_err,theta1,theta2,phi1,phi2,gamma";

pub fn oracle_row(r: &OracleResult, m2_analytic: f64) -> String {
    let w = &r.angles;
    format!(
        "{},{},{},{},{},{}",
        fmt17(r.delta),
        r.mode,
        fmt17(r.m2),
        fmt17(m2_analytic),
        fmt17((r.m2 - m2_analytic).abs()),
        [w.theta1, w.theta2, w.phi1, w.phi2, w.gamma].map(fmt17).join(",")
    )
}

/// Orbit states in catalog format. States matching a catalog entry reuse
/// that entry's row; others leave the angle and label columns empty.
pub fn write_orbit<W: Write>(out: &mut W, orbit: &[StateVector], catalog: &[CatalogEntry]) -> io::Result<()> {
    writeln!(out, "{CATALOG_HEADER}")?;
    for s in orbit {
        match catalog.iter().find(|e| e.state().same_ray(s)) {
            Some(e) => writeln!(out, "{}", catalog_row(e))?,
            None => writeln!(
                out,
                ",,,,,,,,,{},{},{}",
                amplitude_fields(s),
                fmt17(concurrence(s)),
                fmt17(m2_direct(s))
            )?,
        }
    }
    Ok(())
}
