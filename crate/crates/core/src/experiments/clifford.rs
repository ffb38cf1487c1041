//! The two-qubit Clifford group modulo global phase, and state orbits under it.
//!
//! Elements are generated by breadth-first closure over `H⊗I`, `I⊗H`, `S⊗I`,
//! `I⊗S` and CNOT. Two products are identified when they conjugate the Pauli
//! generators `XI, ZI, IX, IZ` to the same signed Pauli strings, which fixes
//! the unitary up to phase.

use std::collections::{HashMap, VecDeque};

use crate::measures::{concurrence, ZERO_TOL};
use crate::state::{gates, PauliString, StateVector, Unitary4};
use crate::{Error, Result};

/// Size of the group modulo phase.
pub const CLIFFORD_ORDER: usize = 11520;
const CLOSURE_LIMIT: usize = 20_000;

pub fn generators() -> [Unitary4; 5] {
    let (i, h, s) = (gates::identity(), gates::hadamard(), gates::phase_s());
    [Unitary4::local(&h, &i), Unitary4::local(&i, &h), Unitary4::local(&s, &i), Unitary4::local(&i, &s), Unitary4::cnot()]
}

/// Signed Pauli string `±Q` equal to `U P U†`, if there is one.
pub fn pauli_image(u: &Unitary4, p: PauliString) -> Option<(PauliString, i8)> {
    let image = u.conjugate(&p.matrix());
    for q in PauliString::ALL {
        let qm = q.matrix();
        // tr(Q · UPU†) / 4 is ±1 when the image is ±Q and 0 otherwise.
        let mut tr = crate::C64::new(0.0, 0.0);
        for r in 0..4 {
            for c in 0..4 {
                tr += qm[r][c] * image[c][r];
            }
        }
        let t = tr / 4.0;
        if t.im.abs() < 1e-8 && (t.re.abs() - 1.0).abs() < 1e-8 {
            return Some((q, if t.re > 0.0 { 1 } else { -1 }));
        }
    }
    None
}

type Key = [(u8, i8); 4];

fn key_of(u: &Unitary4) -> Option<Key> {
    let probes = ["XI", "ZI", "IX", "IZ"].map(|s| s.parse::<PauliString>().expect("valid Pauli label"));
    let mut key = [(0u8, 0i8); 4];
    for (slot, p) in key.iter_mut().zip(probes) {
        let (q, sign) = pauli_image(u, p)?;
        *slot = (q.index() as u8, sign);
    }
    Some(key)
}

#[derive(Clone, Debug)]
pub struct CliffordGroup {
    pub elements: Vec<Unitary4>,
}

impl CliffordGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub fn build_clifford_group() -> Result<CliffordGroup> {
    let gens = generators();
    let id = Unitary4::identity();
    let mut seen: HashMap<Key, ()> = HashMap::new();
    seen.insert(key_of(&id).expect("identity maps Paulis to Paulis"), ());
    let mut elements = vec![id];
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for g in &gens {
            let next = g.then_after(&elements[k]);
            let key = key_of(&next).expect("Clifford products map Paulis to Paulis");
            if seen.insert(key, ()).is_none() {
                elements.push(next);
                if elements.len() > CLOSURE_LIMIT {
                    return Err(Error::ClosureOverflow(elements.len()));
                }
                queue.push_back(elements.len() - 1);
            }
        }
    }
    Ok(CliffordGroup { elements })
}

/// Distinct states `Cψ` over the whole group.
pub fn clifford_orbit(s: &StateVector, group: &CliffordGroup) -> Vec<StateVector> {
    let images: Vec<StateVector> = group.elements.iter().map(|u| u.apply_trusted(s)).collect();
    crate::state::distinct_states(images.iter())
}

/// Orbit decomposition of a finite state set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    /// Indices into the input, one vector per orbit.
    pub orbits: Vec<Vec<usize>>,
    /// Orbit members at the concurrence of their source state that are not
    /// in the input set.
    pub escaped: usize,
}

pub fn partition_into_orbits(states: &[StateVector], group: &CliffordGroup) -> OrbitPartition {
    let mut assigned = vec![false; states.len()];
    let mut orbits = Vec::new();
    let mut escaped = 0;
    for i in 0..states.len() {
        if assigned[i] {
            continue;
        }
        let orbit = clifford_orbit(&states[i], group);
        let delta = concurrence(&states[i]);
        let mut members = Vec::new();
        for o in &orbit {
            let hits: Vec<usize> = (0..states.len()).filter(|&j| states[j].same_ray(o)).collect();
            if hits.is_empty() && (concurrence(o) - delta).abs() < ZERO_TOL {
                escaped += 1;
            }
            for j in hits {
                if !assigned[j] {
                    assigned[j] = true;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    OrbitPartition { orbits, escaped }
}
