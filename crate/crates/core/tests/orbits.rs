//! Clifford group structure beyond the acceptance checks.

use std::sync::OnceLock;

use magic_pareto::experiments::clifford::{build_clifford_group, clifford_orbit, pauli_image, CliffordGroup};
use magic_pareto::experiments::haar_sample;
use magic_pareto::measures::{concurrence, m2_direct};
use magic_pareto::state::{PauliString, StateVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn group() -> &'static CliffordGroup {
    static G: OnceLock<CliffordGroup> = OnceLock::new();
    G.get_or_init(|| build_clifford_group().unwrap())
}

#[test]
fn every_element_permutes_paulis() {
    for u in group().elements.iter().step_by(37) {
        let mut seen = [false; 16];
        for p in PauliString::ALL {
            let (q, _) = pauli_image(u, p).expect("Clifford maps Paulis to Paulis");
            seen[q.index()] = true;
        }
        assert!(seen.iter().all(|s| *s));
    }
}

#[test]
fn stabilizer_states_split_by_entanglement() {
    let orbit = clifford_orbit(&StateVector::basis(0), group());
    assert_eq!(orbit.len(), 60);
    let entangled = orbit.iter().filter(|s| concurrence(s) > 0.5).count();
    assert_eq!(entangled, 24);
    assert!(orbit.iter().all(|s| m2_direct(s).abs() < 1e-12));
}

#[test]
fn elements_are_unitary_and_distinct_up_to_phase() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let probe = haar_sample(&mut rng);
    for u in group().elements.iter().step_by(101) {
        assert!(u.unitarity_defect() < 1e-12);
    }
    // A generic state has a free orbit.
    assert_eq!(clifford_orbit(&probe, group()).len(), 11_520);
}
