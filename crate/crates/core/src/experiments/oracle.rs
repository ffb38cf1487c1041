//! Brute-force search for the extremal magic at fixed concurrence.
//!
//! With `χ = arcsin Δ` held fixed, `M₂` is optimized over the remaining five
//! angles: an exhaustive coarse grid picks starting points, a cyclic
//! coordinate search with golden-section line searches moves them uphill,
//! and a damped Newton step on finite differences finishes. No frontier
//! formula is consulted, so the result is an independent check.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use super::map_indices;
use crate::measures::{expectations_from_trig, m2_from_expectations, AngleTrig};
use crate::params::{wrap_tau, WhartonAngles};
use crate::{Error, Result};

const GOLDEN: f64 = 0.618_033_988_749_894_9;
const LINE_TOL: f64 = 1e-12;
/// Grid points carried into refinement.
const STARTS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Maximize,
    Minimize,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Maximize => "max",
            Mode::Minimize => "min",
        }
    }

    fn score(self, m2: f64) -> f64 {
        match self {
            Mode::Maximize => m2,
            Mode::Minimize => -m2,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "max" | "maximize" => Ok(Mode::Maximize),
            "min" | "minimize" => Ok(Mode::Minimize),
            other => Err(format!("unknown mode {other:?} (expected max or min)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig {
    pub coarse_grid_points_per_angle: usize,
    pub refine_iterations: usize,
    pub refine_tolerance: f64,
    pub mode: Mode,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { coarse_grid_points_per_angle: 24, refine_iterations: 200, refine_tolerance: 1e-9, mode: Mode::Maximize }
    }
}

impl OracleConfig {
    pub fn with_mode(mode: Mode) -> Self {
        Self { mode, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.coarse_grid_points_per_angle < 8 {
            return Err(Error::domain(
                "coarse_grid_points_per_angle",
                self.coarse_grid_points_per_angle as f64,
                ">= 8",
            ));
        }
        if !(self.refine_tolerance > 0.0) {
            return Err(Error::domain("refine_tolerance", self.refine_tolerance, "> 0"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleResult {
    pub delta: f64,
    pub mode: Mode,
    pub m2: f64,
    /// Where the optimum was found.
    pub angles: WhartonAngles,
    /// Coordinate-search cycles used by the winning start.
    pub cycles: usize,
}

/// Free coordinates in `(θ₁, θ₂, φ₁, φ₂, γ)` order.
type Point = [f64; 5];

struct Objective {
    chi_trig: (f64, f64),
    mode: Mode,
}

impl Objective {
    fn m2(&self, x: &Point) -> f64 {
        let t = AngleTrig {
            chi: self.chi_trig,
            theta1: x[0].sin_cos(),
            theta2: x[1].sin_cos(),
            phi1: x[2].sin_cos(),
            phi2: x[3].sin_cos(),
            gamma: x[4].sin_cos(),
        };
        m2_from_expectations(&expectations_from_trig(&t))
    }

    fn score(&self, x: &Point) -> f64 {
        self.mode.score(self.m2(x))
    }
}

/// Indices of the `k` best scores, ties broken by position.
fn push_best(best: &mut Vec<(f64, Point)>, k: usize, score: f64, x: Point) {
    if best.len() == k && score <= best[k - 1].0 {
        return;
    }
    let pos = best.iter().position(|(s, _)| score > *s).unwrap_or(best.len());
    best.insert(pos, (score, x));
    best.truncate(k);
}

fn coarse_grid(obj: &Objective, n: usize) -> Vec<(f64, Point)> {
    let polar: Vec<f64> = (0..n).map(|k| k as f64 * PI / (n - 1) as f64).collect();
    let azim: Vec<f64> = (0..n).map(|k| k as f64 * TAU / n as f64).collect();
    let polar_trig: Vec<(f64, f64)> = polar.iter().map(|x| x.sin_cos()).collect();
    let azim_trig: Vec<(f64, f64)> = azim.iter().map(|x| x.sin_cos()).collect();

    let slices = map_indices(n, |i1| {
        let mut best = Vec::with_capacity(STARTS + 1);
        for i2 in 0..n {
            for j1 in 0..n {
                for j2 in 0..n {
                    for g in 0..n {
                        let t = AngleTrig {
                            chi: obj.chi_trig,
                            theta1: polar_trig[i1],
                            theta2: polar_trig[i2],
                            phi1: azim_trig[j1],
                            phi2: azim_trig[j2],
                            gamma: azim_trig[g],
                        };
                        let s = obj.mode.score(m2_from_expectations(&expectations_from_trig(&t)));
                        push_best(&mut best, STARTS, s, [polar[i1], polar[i2], azim[j1], azim[j2], azim[g]]);
                    }
                }
            }
        }
        best
    });
    let mut best = Vec::with_capacity(STARTS + 1);
    for slice in slices {
        for (s, x) in slice {
            push_best(&mut best, STARTS, s, x);
        }
    }
    best
}

/// Golden-section maximization of `f` on `[lo, hi]`.
fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > LINE_TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Solve the 5×5 system `a·x = b` by Gaussian elimination with pivoting.
fn solve5(mut a: [[f64; 5]; 5], mut b: Point) -> Option<Point> {
    for col in 0..5 {
        let piv = (col..5).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..5 {
            let f = a[r][col] / a[col][col];
            for c in col..5 {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = [0.0; 5];
    for r in (0..5).rev() {
        let tail: f64 = (r + 1..5).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - tail) / a[r][r];
    }
    Some(x)
}

fn clamp_polar(mut y: Point) -> Point {
    y[0] = y[0].clamp(0.0, PI);
    y[1] = y[1].clamp(0.0, PI);
    y
}

/// Levenberg-damped Newton ascent with central-difference derivatives.
fn newton_polish(obj: &Objective, mut x: Point, mut fx: f64) -> (Point, f64) {
    const H: f64 = 1e-4;
    let mut lambda = 1e-6;
    for _ in 0..60 {
        let f = |y: Point| obj.score(&clamp_polar(y));
        let shifted = |i: usize, di: f64, j: usize, dj: f64| {
            let mut y = x;
            y[i] += di;
            y[j] += dj;
            f(y)
        };
        let mut g = [0.0; 5];
        let mut hess = [[0.0; 5]; 5];
        for i in 0..5 {
            let (p, m) = (shifted(i, H, i, 0.0), shifted(i, -H, i, 0.0));
            g[i] = (p - m) / (2.0 * H);
            hess[i][i] = (p - 2.0 * fx + m) / (H * H);
            for j in 0..i {
                let v = (shifted(i, H, j, H) - shifted(i, H, j, -H) - shifted(i, -H, j, H) + shifted(i, -H, j, -H))
                    / (4.0 * H * H);
                hess[i][j] = v;
                hess[j][i] = v;
            }
        }
        if g.iter().all(|v| v.abs() < 1e-10) {
            break;
        }
        let mut improved = false;
        while lambda < 1e6 {
            let mut a = hess.map(|row| row.map(|v| -v));
            for (i, row) in a.iter_mut().enumerate() {
                row[i] += lambda * (1.0 + row[i].abs());
            }
            if let Some(step) = solve5(a, g) {
                let y = clamp_polar(std::array::from_fn(|i| x[i] + step[i]));
                let fy = obj.score(&y);
                if fy > fx {
                    x = y;
                    fx = fy;
                    lambda = (lambda * 0.1).max(1e-12);
                    improved = true;
                    break;
                }
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    (x, fx)
}

/// Coordinate ascent from `start` followed by a Newton polish; returns the
/// point, its score and the number of coordinate cycles.
fn refine(obj: &Objective, start: Point, step: f64, cfg: &OracleConfig) -> (Point, f64, usize) {
    let mut x = start;
    let mut fx = obj.score(&x);
    let mut h = step;
    let mut cycles = 0;
    while cycles < cfg.refine_iterations {
        cycles += 1;
        let before = fx;
        let start_of_cycle = x;
        for i in 0..5 {
            let (lo, hi) = if i < 2 {
                ((x[i] - h).max(0.0), (x[i] + h).min(PI))
            } else {
                (x[i] - h, x[i] + h)
            };
            let (xi, fi) = golden_max(
                |v| {
                    let mut y = x;
                    y[i] = v;
                    obj.score(&y)
                },
                lo,
                hi,
            );
            if fi > fx {
                x[i] = xi;
                fx = fi;
            }
        }
        // Pattern move along this cycle's net displacement.
        let d: Point = std::array::from_fn(|i| x[i] - start_of_cycle[i]);
        if d.iter().any(|v| *v != 0.0) {
            let at = |t: f64| -> Point { clamp_polar(std::array::from_fn(|i| x[i] + t * d[i])) };
            let (t, ft) = golden_max(|t| obj.score(&at(t)), -1.0, 4.0);
            if ft > fx {
                x = at(t);
                fx = ft;
            }
        }
        if fx - before < cfg.refine_tolerance {
            if h < 1e-6 {
                break;
            }
            h *= 0.5;
        }
    }
    let (x, fx) = newton_polish(obj, x, fx);
    (x, fx, cycles)
}

/// Best `M₂` (largest or smallest per `cfg.mode`) among states with
/// concurrence `delta`.
pub fn frontier_oracle(delta: f64, cfg: &OracleConfig) -> Result<OracleResult> {
    cfg.validate()?;
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::domain("delta", delta, "[0, 1]"));
    }
    let chi = delta.asin();
    let obj = Objective { chi_trig: chi.sin_cos(), mode: cfg.mode };
    let n = cfg.coarse_grid_points_per_angle;
    let starts = coarse_grid(&obj, n);
    let step = TAU / n as f64;
    let refined = map_indices(starts.len(), |i| refine(&obj, starts[i].1, step, cfg));

    let (x, score, cycles) = refined
        .into_iter()
        .fold(None::<(Point, f64, usize)>, |acc, r| match acc {
            Some(a) if a.1 >= r.1 => Some(a),
            _ => Some(r),
        })
        .expect("at least one start");
    let angles = WhartonAngles::new(x[0], x[2], x[1], x[3], chi, wrap_tau(x[4]))?;
    Ok(OracleResult { delta, mode: cfg.mode, m2: cfg.mode.score(score), angles, cycles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontiers::{f_abc, f_ihg};
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn config_validation() {
        let mut c = OracleConfig::default();
        assert!(c.validate().is_ok());
        c.coarse_grid_points_per_angle = 4;
        assert!(c.validate().is_err());
        let c = OracleConfig { refine_tolerance: 0.0, ..OracleConfig::default() };
        assert!(c.validate().is_err());
        assert!(frontier_oracle(1.5, &OracleConfig::default()).is_err());
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (x, f) = golden_max(|x| -(x - 0.3).powi(2), -1.0, 2.0);
        assert!((x - 0.3).abs() < 1e-6);
        assert!(f.abs() < 1e-12);
    }

    #[test]
    fn push_best_keeps_top_k() {
        let mut best = Vec::new();
        for (i, s) in [3.0, 1.0, 4.0, 1.5, 9.0].iter().enumerate() {
            push_best(&mut best, 3, *s, [i as f64; 5]);
        }
        let scores: Vec<f64> = best.iter().map(|b| b.0).collect();
        assert_eq!(scores, vec![9.0, 4.0, 3.0]);
    }

    #[test]
    fn small_grid_maximum_at_h() {
        let cfg = OracleConfig { coarse_grid_points_per_angle: 12, ..OracleConfig::default() };
        let r = frontier_oracle(0.5, &cfg).unwrap();
        assert!((r.m2 - f_ihg(0.5).unwrap()).abs() < 1e-5, "{r:?}");
    }

    #[test]
    fn small_grid_minimum_at_b() {
        let cfg = OracleConfig { coarse_grid_points_per_angle: 12, mode: Mode::Minimize, ..OracleConfig::default() };
        let r = frontier_oracle(FRAC_1_SQRT_2, &cfg).unwrap();
        assert!((r.m2 - f_abc(FRAC_1_SQRT_2).unwrap()).abs() < 1e-5, "{r:?}");
    }
}
