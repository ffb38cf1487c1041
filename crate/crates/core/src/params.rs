//! The six-angle Wharton parametrization of pure two-qubit states.
//!
//! A state is built from two local spinors `(A, B)` and `(C, D)` with polar
//! angles `θᵢ`, azimuths `φᵢ` and phases `αᵢ`, entangled through the
//! concurrence angle `χ`. Only the sum `γ = α₁ + α₂` (the recurrence angle)
//! survives. Concurrence is `sin χ`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64 as C64;
use rand::Rng;

use crate::state::StateVector;
use crate::{Error, Result};

/// Slack allowed on the closed ranges of `θ` and `χ` before rejecting input.
const RANGE_SLACK: f64 = 1e-12;

/// Reduce an angle into `[0, 2π)`.
pub fn wrap_tau(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid can return TAU itself for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WhartonAngles {
    pub theta1: f64,
    pub phi1: f64,
    pub theta2: f64,
    pub phi2: f64,
    pub chi: f64,
    pub gamma: f64,
}

impl WhartonAngles {
    /// Validate and normalize. `φ₁, φ₂, γ` are reduced modulo 2π (this only
    /// changes the global phase of the state); `θᵢ ∈ [0, π]` and
    /// `χ ∈ [0, π/2]` are required.
    pub fn new(theta1: f64, phi1: f64, theta2: f64, phi2: f64, chi: f64, gamma: f64) -> Result<Self> {
        let all = [theta1, phi1, theta2, phi2, chi, gamma];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidAngles(format!("non-finite angle in {all:?}")));
        }
        let clamp = |x: f64, hi: f64, name: &str| -> Result<f64> {
            if x < -RANGE_SLACK || x > hi + RANGE_SLACK {
                Err(Error::InvalidAngles(format!("{name} = {x} outside [0, {hi}]")))
            } else {
                Ok(x.clamp(0.0, hi))
            }
        };
        Ok(Self {
            theta1: clamp(theta1, PI, "theta1")?,
            phi1: wrap_tau(phi1),
            theta2: clamp(theta2, PI, "theta2")?,
            phi2: wrap_tau(phi2),
            chi: clamp(chi, FRAC_PI_2, "chi")?,
            gamma: wrap_tau(gamma),
        })
    }

    /// Uniform draw over the angle box (not the Haar measure).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self {
            theta1: rng.gen_range(0.0..=PI),
            phi1: rng.gen_range(0.0..TAU),
            theta2: rng.gen_range(0.0..=PI),
            phi2: rng.gen_range(0.0..TAU),
            chi: rng.gen_range(0.0..=FRAC_PI_2),
            gamma: rng.gen_range(0.0..TAU),
        }
    }

    pub fn with_chi(self, chi: f64) -> Self {
        Self { chi, ..self }
    }

    pub fn with_gamma(self, gamma: f64) -> Self {
        Self { gamma: wrap_tau(gamma), ..self }
    }

    /// The five angles other than `χ`, in `(θ₁, θ₂, φ₁, φ₂, γ)` order.
    pub fn free_angles(&self) -> [f64; 5] {
        [self.theta1, self.theta2, self.phi1, self.phi2, self.gamma]
    }
}

/// `a, b, c, d` from the closed-form parametrization.
pub fn angles_to_state(w: &WhartonAngles) -> StateVector {
    let (s_chi, c_chi) = (w.chi / 2.0).sin_cos();
    let (s1, c1) = (w.theta1 / 2.0).sin_cos();
    let (s2, c2) = (w.theta2 / 2.0).sin_cos();
    let g = C64::from_polar(1.0, w.gamma / 2.0);
    let gc = g.conj();
    let phase = |x: f64| C64::from_polar(1.0, x);
    let sum = (w.phi1 + w.phi2) / 2.0;
    let diff = (w.phi1 - w.phi2) / 2.0;

    let a = (c_chi * c1 * c2 * g + s_chi * s1 * s2 * gc) * phase(-sum);
    let b = (c_chi * c1 * s2 * g - s_chi * s1 * c2 * gc) * phase(-diff);
    let c = (c_chi * s1 * c2 * g - s_chi * c1 * s2 * gc) * phase(diff);
    let d = (c_chi * s1 * s2 * g + s_chi * c1 * c2 * gc) * phase(sum);
    StateVector::from_normalized([a, b, c, d])
}

/// A normalized local spinor `(up, down)` with its phase parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spinor {
    pub up: C64,
    pub down: C64,
    pub alpha: f64,
}

/// `e^{iα/2}·(cos(θ/2)e^{−iφ/2}, sin(θ/2)e^{+iφ/2})`.
pub fn make_spinor(theta: f64, phi: f64, alpha: f64) -> Spinor {
    let (s, c) = (theta / 2.0).sin_cos();
    let global = C64::from_polar(1.0, alpha / 2.0);
    Spinor {
        up: global * C64::from_polar(c, -phi / 2.0),
        down: global * C64::from_polar(s, phi / 2.0),
        alpha,
    }
}

/// Combine two local spinors at concurrence angle `χ`.
pub fn assemble(s1: &Spinor, s2: &Spinor, chi: f64) -> StateVector {
    let (big_a, big_b, big_c, big_d) = (s1.up, s1.down, s2.up, s2.down);
    let (sn, cs) = (chi / 2.0).sin_cos();
    let a = big_a * big_c * cs + big_b.conj() * big_d.conj() * sn;
    let b = big_a * big_d * cs - big_b.conj() * big_c.conj() * sn;
    let c = big_b * big_c * cs - big_a.conj() * big_d.conj() * sn;
    let d = big_b * big_d * cs + big_a.conj() * big_c.conj() * sn;
    StateVector::from_normalized([a, b, c, d])
}

/// `Δ = sin χ`.
pub fn concurrence_of_angles(w: &WhartonAngles) -> f64 {
    w.chi.sin()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::concurrence;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn w(t1: f64, p1: f64, t2: f64, p2: f64, chi: f64, g: f64) -> WhartonAngles {
        WhartonAngles::new(t1, p1, t2, p2, chi, g).unwrap()
    }

    #[test]
    fn zero_angles_give_00() {
        let s = angles_to_state(&w(0.0, 0.0, 0.0, 0.0, 0.0, 0.0));
        assert_eq!(s, StateVector::basis(0));
    }

    #[test]
    fn polar_spinors_give_schmidt_form() {
        let (chi, g) = (0.83, 2.1);
        let s = angles_to_state(&w(0.0, 0.0, 0.0, 0.0, chi, g));
        let amps = s.amplitudes();
        let expect_a = C64::from_polar((chi / 2.0).cos(), g / 2.0);
        let expect_d = C64::from_polar((chi / 2.0).sin(), -g / 2.0);
        assert!((amps[0] - expect_a).norm() < 1e-15);
        assert!((amps[3] - expect_d).norm() < 1e-15);
        assert_eq!(amps[1].norm(), 0.0);
        assert_eq!(amps[2].norm(), 0.0);
    }

    #[test]
    fn row_zero_state_is_phi_independent() {
        // θ₁ = θ₂ = 0, γ = φ₁ + φ₂ + π/2 gives cos(χ/2)e^{iπ/4}|00⟩ + sin(χ/2)e^{−iπ/4}|11⟩
        let chi: f64 = 0.9;
        let target = StateVector::new(
            C64::from_polar((chi / 2.0).cos(), FRAC_PI_4),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::from_polar((chi / 2.0).sin(), -FRAC_PI_4),
        )
        .unwrap();
        for (p1, p2) in [(0.0, 0.0), (0.4, 1.7), (3.0, 5.5)] {
            let s = angles_to_state(&w(0.0, p1, 0.0, p2, chi, p1 + p2 + FRAC_PI_2));
            assert!((s.fidelity(&target) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn spinor_examples() {
        let s = make_spinor(0.0, 0.0, 0.0);
        assert_eq!((s.up, s.down), (C64::new(1.0, 0.0), C64::new(0.0, 0.0)));
        let s = make_spinor(PI, 0.0, 0.0);
        assert!((s.up).norm() < 1e-16 && (s.down - C64::new(1.0, 0.0)).norm() < 1e-16);
        let s = make_spinor(FRAC_PI_2, FRAC_PI_2, 0.0);
        assert!((s.up - C64::from_polar(FRAC_1_SQRT_2, -FRAC_PI_4)).norm() < 1e-15);
        assert!((s.down - C64::from_polar(FRAC_1_SQRT_2, FRAC_PI_4)).norm() < 1e-15);
    }

    #[test]
    fn assemble_examples() {
        let up = make_spinor(0.0, 0.0, 0.0);
        assert_eq!(assemble(&up, &up, 0.0), StateVector::basis(0));
        let bell = StateVector::new(
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
        )
        .unwrap();
        assert!((assemble(&up, &up, FRAC_PI_2).fidelity(&bell) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn assemble_agrees_with_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let a = WhartonAngles::random(&mut rng);
            let alpha1: f64 = rng.gen_range(0.0..TAU);
            let alpha2 = a.gamma - alpha1;
            let s = assemble(
                &make_spinor(a.theta1, a.phi1, alpha1),
                &make_spinor(a.theta2, a.phi2, alpha2),
                a.chi,
            );
            assert!((s.fidelity(&angles_to_state(&a)) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn concurrence_examples() {
        assert_eq!(concurrence_of_angles(&w(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)), 0.0);
        assert_eq!(concurrence_of_angles(&w(0.0, 0.0, 0.0, 0.0, FRAC_PI_2, 0.0)), 1.0);
        let a = w(1.1, 4.0, 2.3, 0.2, FRAC_PI_4, 5.1);
        let direct = concurrence(&angles_to_state(&a));
        assert!((concurrence_of_angles(&a) - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((direct - FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn recurrence_angle_sine_diagnostic() {
        // In this gauge ad − bc is real, and
        // sin γ = 2 Im(ad + bc) / (cos χ sin θ₁ sin θ₂).
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let a = WhartonAngles::random(&mut rng);
            let denom = a.chi.cos() * a.theta1.sin() * a.theta2.sin();
            if denom.abs() < 1e-3 {
                continue;
            }
            let [pa, pb, pc, pd] = *angles_to_state(&a).amplitudes();
            assert!((pa * pd - pb * pc).im.abs() < 1e-12);
            let sin_gamma = 2.0 * (pa * pd + pb * pc).im / denom;
            assert!((sin_gamma - a.gamma.sin()).abs() < 1e-9, "{a:?}");
        }
    }

    #[test]
    fn validation() {
        assert!(WhartonAngles::new(f64::NAN, 0.0, 0.0, 0.0, 0.0, 0.0).is_err());
        assert!(WhartonAngles::new(0.0, 0.0, 0.0, 0.0, 2.0, 0.0).is_err());
        assert!(WhartonAngles::new(-0.1, 0.0, 0.0, 0.0, 0.0, 0.0).is_err());
        let a = w(0.0, -FRAC_PI_4, 0.0, 7.0, 0.0, -PI);
        assert!((a.phi1 - 7.0 * FRAC_PI_4).abs() < 1e-15);
        assert!((a.phi2 - (7.0 - TAU)).abs() < 1e-15);
        assert!((a.gamma - PI).abs() < 1e-15);
    }

    #[test]
    fn wrapping_only_changes_global_phase() {
        let a = WhartonAngles { theta1: 1.0, phi1: -0.5, theta2: 2.0, phi2: 9.0, chi: 0.7, gamma: -3.0 };
        let b = WhartonAngles::new(a.theta1, a.phi1, a.theta2, a.phi2, a.chi, a.gamma).unwrap();
        assert!((angles_to_state(&a).fidelity(&angles_to_state(&b)) - 1.0).abs() < 1e-14);
    }
}
