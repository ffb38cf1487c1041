//! Dense pure two-qubit states.
//!
//! Amplitudes are stored in the basis order `|00⟩, |01⟩, |10⟩, |11⟩`; the
//! first qubit is the most significant bit. All 4×4 matrices use the same
//! order. Global phase is never canonicalized: two states describe the same
//! physical ray iff their [`fidelity`](StateVector::fidelity) is 1.

use std::fmt;

use num_complex::Complex64 as C64;

use crate::{Error, Result, SAME_STATE_FIDELITY};

const NORM_FLOOR: f64 = 1e-14;
const UNITARY_TOL: f64 = 1e-10;
const IMAG_TOL: f64 = 1e-10;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// A normalized pure two-qubit state `a|00⟩ + b|01⟩ + c|10⟩ + d|11⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVector {
    amps: [C64; 4],
}

impl StateVector {
    /// Normalize `(a, b, c, d)` by its Euclidean norm.
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        Self::from_amplitudes([a, b, c, d])
    }

    pub fn from_amplitudes(amps: [C64; 4]) -> Result<Self> {
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm >= NORM_FLOOR) {
            return Err(Error::ZeroVector { norm });
        }
        Ok(Self { amps: amps.map(|z| z / norm) })
    }

    /// Wrap amplitudes that are already normalized by construction.
    pub(crate) fn from_normalized(amps: [C64; 4]) -> Self {
        Self { amps }
    }

    /// Computational basis state `|q1 q2⟩` with `index = 2·q1 + q2`.
    pub fn basis(index: usize) -> Self {
        assert!(index < 4, "basis index {index} out of range");
        let mut amps = [ZERO; 4];
        amps[index] = ONE;
        Self { amps }
    }

    pub fn amplitudes(&self) -> &[C64; 4] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(x, y)| x.conj() * y)
            .sum()
    }

    /// `|⟨ψ₁|ψ₂⟩|²`.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr().min(1.0)
    }

    pub fn same_ray(&self, other: &StateVector) -> bool {
        self.fidelity(other) > SAME_STATE_FIDELITY
    }

    pub fn with_global_phase(&self, phase: f64) -> Self {
        let z = C64::from_polar(1.0, phase);
        Self { amps: self.amps.map(|a| a * z) }
    }

    /// `⟨ψ|P₁⊗P₂|ψ⟩`.
    ///
    /// Panics if the imaginary part exceeds `1e-10`; the operator is Hermitian
    /// so that can only happen through a bug.
    pub fn expectation(&self, p: PauliString) -> f64 {
        let image = p.apply(&self.amps);
        let z: C64 = self
            .amps
            .iter()
            .zip(image.iter())
            .map(|(x, y)| x.conj() * y)
            .sum();
        assert!(
            z.im.abs() < IMAG_TOL,
            "imaginary residue {:e} in <{}>",
            z.im,
            p
        );
        z.re
    }

    /// All 16 expectations in [`PauliString::ALL`] order.
    pub fn expectations(&self) -> [f64; 16] {
        PauliString::ALL.map(|p| self.expectation(p))
    }
}

/// Deduplicate physical states by fidelity, keeping first occurrences.
pub fn distinct_states<'a, I>(states: I) -> Vec<StateVector>
where
    I: IntoIterator<Item = &'a StateVector>,
{
    let mut kept: Vec<StateVector> = Vec::new();
    for s in states {
        if !kept.iter().any(|k| k.same_ray(s)) {
            kept.push(*s);
        }
    }
    kept
}

/// Single-qubit Pauli operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    fn index(self) -> usize {
        self as usize
    }

    /// Image of basis bit `b` under this operator: `P|b⟩ = phase·|b'⟩`.
    fn act(self, bit: usize) -> (usize, C64) {
        match self {
            Pauli::I => (bit, ONE),
            Pauli::X => (bit ^ 1, ONE),
            // Y|0⟩ = i|1⟩, Y|1⟩ = -i|0⟩
            Pauli::Y => (bit ^ 1, if bit == 0 { C64::i() } else { -C64::i() }),
            Pauli::Z => (bit, if bit == 0 { ONE } else { -ONE }),
        }
    }

    pub fn matrix(self) -> [[C64; 2]; 2] {
        let mut m = [[ZERO; 2]; 2];
        for col in 0..2 {
            let (row, ph) = self.act(col);
            m[row][col] = ph;
        }
        m
    }

    fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A two-qubit Pauli string `P₁⊗P₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    pub first: Pauli,
    pub second: Pauli,
}

impl PauliString {
    /// The 16 strings, ordered `II, IX, IY, IZ, XI, …, ZZ`.
    pub const ALL: [PauliString; 16] = {
        let mut out = [PauliString { first: Pauli::I, second: Pauli::I }; 16];
        let mut i = 0;
        while i < 16 {
            out[i] = PauliString {
                first: Pauli::ALL[i / 4],
                second: Pauli::ALL[i % 4],
            };
            i += 1;
        }
        out
    };

    pub const fn new(first: Pauli, second: Pauli) -> Self {
        Self { first, second }
    }

    /// Position in [`PauliString::ALL`].
    pub fn index(self) -> usize {
        4 * self.first.index() + self.second.index()
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }

    pub fn is_identity(self) -> bool {
        self.first == Pauli::I && self.second == Pauli::I
    }

    /// Apply `P₁⊗P₂` to a 4-vector in the `|q1 q2⟩` basis.
    pub fn apply(self, v: &[C64; 4]) -> [C64; 4] {
        let mut out = [ZERO; 4];
        for (i, amp) in v.iter().enumerate() {
            let (b1, p1) = self.first.act(i >> 1);
            let (b2, p2) = self.second.act(i & 1);
            out[(b1 << 1) | b2] += p1 * p2 * amp;
        }
        out
    }

    pub fn matrix(self) -> [[C64; 4]; 4] {
        kron(&self.first.matrix(), &self.second.matrix())
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.first.symbol(), self.second.symbol())
    }
}

impl std::str::FromStr for PauliString {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parse = |c: char| match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            _ => Err(format!("not a Pauli symbol: {c:?}")),
        };
        let chars: Vec<char> = s.trim().chars().collect();
        match chars.as_slice() {
            [a, b] => Ok(PauliString::new(parse(*a)?, parse(*b)?)),
            _ => Err(format!("expected two Pauli symbols, got {s:?}")),
        }
    }
}

pub type Matrix2 = [[C64; 2]; 2];
pub type Matrix4 = [[C64; 4]; 4];

pub fn kron(a: &Matrix2, b: &Matrix2) -> Matrix4 {
    let mut m = [[ZERO; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            m[r][c] = a[r >> 1][c >> 1] * b[r & 1][c & 1];
        }
    }
    m
}

fn matmul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut m = [[ZERO; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            m[r][c] = (0..4).map(|k| a[r][k] * b[k][c]).sum();
        }
    }
    m
}

fn adjoint(a: &Matrix4) -> Matrix4 {
    let mut m = [[ZERO; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            m[r][c] = a[c][r].conj();
        }
    }
    m
}

/// A 4×4 complex matrix intended to be unitary.
///
/// Construction does not validate; [`Unitary4::apply`] does.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Unitary4 {
    m: Matrix4,
}

impl Unitary4 {
    pub fn from_matrix(m: Matrix4) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = ONE;
        }
        Self { m }
    }

    pub fn local(a: &Matrix2, b: &Matrix2) -> Self {
        Self { m: kron(a, b) }
    }

    /// Controlled-NOT with the first qubit as control.
    pub fn cnot() -> Self {
        let mut m = [[ZERO; 4]; 4];
        m[0][0] = ONE;
        m[1][1] = ONE;
        m[2][3] = ONE;
        m[3][2] = ONE;
        Self { m }
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.m
    }

    /// `self · rhs`.
    pub fn then_after(&self, rhs: &Unitary4) -> Unitary4 {
        Unitary4 { m: matmul(&self.m, &rhs.m) }
    }

    pub fn adjoint(&self) -> Unitary4 {
        Unitary4 { m: adjoint(&self.m) }
    }

    /// Largest entrywise deviation of `U†U` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let p = matmul(&adjoint(&self.m), &self.m);
        let mut worst = 0.0f64;
        for (r, row) in p.iter().enumerate() {
            for (c, z) in row.iter().enumerate() {
                let target = if r == c { ONE } else { ZERO };
                worst = worst.max((z - target).norm());
            }
        }
        worst
    }

    /// `U·ψ`, after checking `U†U = 1` to within `1e-10`.
    pub fn apply(&self, s: &StateVector) -> Result<StateVector> {
        let deviation = self.unitarity_defect();
        if !(deviation < UNITARY_TOL) {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(self.apply_trusted(s))
    }

    /// `U·ψ` for matrices known to be unitary (e.g. Clifford products).
    pub fn apply_trusted(&self, s: &StateVector) -> StateVector {
        let v = s.amplitudes();
        let mut out = [ZERO; 4];
        for (r, row) in self.m.iter().enumerate() {
            out[r] = row.iter().zip(v.iter()).map(|(x, y)| x * y).sum();
        }
        StateVector::from_normalized(out)
    }

    /// `U P U†` as a dense matrix.
    pub fn conjugate(&self, p: &Matrix4) -> Matrix4 {
        matmul(&matmul(&self.m, p), &adjoint(&self.m))
    }
}

/// Common single-qubit gates.
pub mod gates {
    use super::{Matrix2, C64, ONE, ZERO};

    pub fn identity() -> Matrix2 {
        [[ONE, ZERO], [ZERO, ONE]]
    }

    pub fn hadamard() -> Matrix2 {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        [[h, h], [h, -h]]
    }

    pub fn phase_s() -> Matrix2 {
        [[ONE, ZERO], [ZERO, C64::i()]]
    }

    /// Generic SU(2) element `Rz(a)·Ry(b)·Rz(c)`.
    pub fn euler(a: f64, b: f64, c: f64) -> Matrix2 {
        let (s, co) = (b / 2.0).sin_cos();
        let e = |x: f64| C64::from_polar(1.0, x);
        [
            [e(-(a + c) / 2.0) * co, -e(-(a - c) / 2.0) * s],
            [e((a - c) / 2.0) * s, e((a + c) / 2.0) * co],
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn bell() -> StateVector {
        StateVector::new(c(1.0), c(0.0), c(0.0), c(1.0)).unwrap()
    }

    #[test]
    fn make_state_normalizes() {
        let s = StateVector::new(c(2.0), c(0.0), c(0.0), c(0.0)).unwrap();
        assert_eq!(s.amplitudes()[0], c(1.0));
        let b = bell();
        assert!((b.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((b.amplitudes()[3].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((b.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_vector_is_rejected() {
        let z = c(0.0);
        assert!(matches!(StateVector::new(z, z, z, z), Err(Error::ZeroVector { .. })));
        let tiny = c(1e-16);
        assert!(StateVector::new(tiny, z, z, z).is_err());
    }

    #[test]
    fn expectation_examples() {
        let zz = StateVector::basis(0);
        assert_eq!(zz.expectation("ZI".parse().unwrap()), 1.0);
        assert!((bell().expectation("XX".parse().unwrap()) - 1.0).abs() < 1e-15);
        assert!((bell().expectation("YY".parse().unwrap()) + 1.0).abs() < 1e-15);
        assert_eq!(zz.expectation(PauliString::ALL[0]), 1.0);
    }

    #[test]
    fn pauli_strings_are_hermitian_unitary() {
        for p in PauliString::ALL {
            let u = Unitary4::from_matrix(p.matrix());
            assert!(u.unitarity_defect() < 1e-15);
            assert_eq!(u.adjoint().matrix(), u.matrix(), "{p} not Hermitian");
        }
        let names: Vec<String> = PauliString::ALL.iter().map(|p| p.to_string()).collect();
        assert_eq!(names[0], "II");
        assert_eq!(names[6], "XY");
        assert_eq!(names[15], "ZZ");
    }

    #[test]
    fn apply_matches_matrix_action() {
        let v = [C64::new(0.1, 0.2), C64::new(-0.3, 0.4), C64::new(0.5, -0.1), C64::new(0.2, 0.6)];
        for p in PauliString::ALL {
            let m = p.matrix();
            let fast = p.apply(&v);
            for r in 0..4 {
                let slow: C64 = (0..4).map(|k| m[r][k] * v[k]).sum();
                assert!((slow - fast[r]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn fidelity_examples() {
        let a = StateVector::basis(0);
        assert_eq!(a.fidelity(&a), 1.0);
        assert!((a.fidelity(&a.with_global_phase(PI / 3.0)) - 1.0).abs() < 1e-15);
        assert_eq!(a.fidelity(&StateVector::basis(3)), 0.0);
    }

    #[test]
    fn unitary_application_examples() {
        let s01 = StateVector::basis(1);
        assert_eq!(Unitary4::identity().apply(&s01).unwrap(), s01);
        assert_eq!(Unitary4::cnot().apply(&StateVector::basis(2)).unwrap(), StateVector::basis(3));

        let h1 = Unitary4::local(&gates::hadamard(), &gates::identity());
        let circuit = Unitary4::cnot().then_after(&h1);
        let out = circuit.apply(&StateVector::basis(0)).unwrap();
        assert!((out.fidelity(&bell()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn non_unitary_is_rejected() {
        let mut m = *Unitary4::identity().matrix();
        m[0][0] = c(2.0);
        let err = Unitary4::from_matrix(m).apply(&StateVector::basis(0)).unwrap_err();
        assert!(matches!(err, Error::NotUnitary { .. }));
    }

    #[test]
    fn distinct_states_ignores_global_phase() {
        let a = StateVector::basis(0);
        let states = [a, a.with_global_phase(1.0), StateVector::basis(1), bell()];
        assert_eq!(distinct_states(states.iter()).len(), 3);
    }
}
