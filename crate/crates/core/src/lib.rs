//! Magic and entanglement of pure two-qubit states.
//!
//! Magic is measured by the stabilizer Rényi-2 entropy `M₂` and entanglement
//! by the concurrence `Δ`. The crate provides
//!
//! * a dense state representation with Pauli-string expectations ([`state`]),
//! * the six-angle Wharton parametrization ([`params`]),
//! * `Δ`, `M₂` and zero patterns of the 16 expectations ([`measures`]),
//! * the closed-form Pareto boundaries of minimal and maximal `M₂` at fixed
//!   `Δ` ([`frontiers`]),
//! * explicit catalogs of every extremal state on each boundary branch
//!   ([`catalogs`]),
//! * Haar sampling, a brute-force frontier oracle and Clifford orbits
//!   ([`experiments`]).
//!
//! Magic is always in nats, angles in radians.

pub mod catalogs;
pub mod error;
pub mod experiments;
pub mod export;
pub mod frontiers;
pub mod measures;
pub mod params;
pub mod state;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

/// Fidelity above which two states are treated as the same physical ray.
pub const SAME_STATE_FIDELITY: f64 = 1.0 - 1e-9;
