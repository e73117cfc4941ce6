//! Symplectic (binary) representation of Pauli operators.
//!
//! An operator on `N` qubits is the pair of bit vectors `(x, z)`; qubit `i`
//! carries I/X/Z/Y according to `(x_i, z_i)` = (0,0)/(1,0)/(0,1)/(1,1).
//! Products are component-wise XORs and global phases are discarded
//! throughout: syndromes and decoding depend only on commutation structure,
//! which is phase-independent.

use crate::gf2::BitVec;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PauliParseError {
    #[error("invalid Pauli character '{ch}' at position {pos}")]
    InvalidChar { pos: usize, ch: char },
    #[error("Pauli string has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliKind {
    I,
    X,
    Y,
    Z,
}

impl PauliKind {
    pub fn to_char(self) -> char {
        match self {
            PauliKind::I => 'I',
            PauliKind::X => 'X',
            PauliKind::Y => 'Y',
            PauliKind::Z => 'Z',
        }
    }
}

/// A phase-free N-qubit Pauli operator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVec,
    z: BitVec,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    pub fn from_parts(x: BitVec, z: BitVec) -> Self {
        assert_eq!(x.len(), z.len());
        Self { x, z }
    }

    /// Single-qubit operator embedded on `n` qubits.
    pub fn single(n: usize, qubit: usize, kind: PauliKind) -> Self {
        let mut p = Self::identity(n);
        p.set(qubit, kind);
        p
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.len() == 0
    }

    pub fn x_part(&self) -> &BitVec {
        &self.x
    }

    pub fn z_part(&self) -> &BitVec {
        &self.z
    }

    pub fn get(&self, qubit: usize) -> PauliKind {
        match (self.x.get(qubit), self.z.get(qubit)) {
            (false, false) => PauliKind::I,
            (true, false) => PauliKind::X,
            (false, true) => PauliKind::Z,
            (true, true) => PauliKind::Y,
        }
    }

    pub fn set(&mut self, qubit: usize, kind: PauliKind) {
        let (x, z) = match kind {
            PauliKind::I => (false, false),
            PauliKind::X => (true, false),
            PauliKind::Z => (false, true),
            PauliKind::Y => (true, true),
        };
        self.x.set(qubit, x);
        self.z.set(qubit, z);
    }

    /// Phase-free product: component-wise XOR of the x and z parts.
    pub fn product(&self, other: &PauliOperator) -> PauliOperator {
        PauliOperator {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        }
    }

    pub fn mul_assign(&mut self, other: &PauliOperator) {
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.x.or_count_ones(&self.z)
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// The 2N-bit symplectic row `x | z`, used for independence and
    /// group-membership computations.
    pub fn symplectic_row(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    pub fn to_pauli_string(&self) -> String {
        (0..self.len()).map(|i| self.get(i).to_char()).collect()
    }
}

impl std::fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Pauli({})", self.to_pauli_string())
    }
}

impl std::fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_pauli_string())
    }
}

/// 0 iff the operators commute; parity of `P.x . Q.z XOR P.z . Q.x`.
pub fn symplectic_product(p: &PauliOperator, q: &PauliOperator) -> bool {
    debug_assert_eq!(p.len(), q.len());
    p.x.dot(&q.z) ^ p.z.dot(&q.x)
}

pub fn pauli_parse(text: &str) -> Result<PauliOperator, PauliParseError> {
    let mut p = PauliOperator::identity(text.chars().count());
    for (i, c) in text.chars().enumerate() {
        let kind = match c {
            'I' | 'i' => PauliKind::I,
            'X' | 'x' => PauliKind::X,
            'Y' | 'y' => PauliKind::Y,
            'Z' | 'z' => PauliKind::Z,
            _ => return Err(PauliParseError::InvalidChar { pos: i, ch: c }),
        };
        p.set(i, kind);
    }
    Ok(p)
}

/// Like [`pauli_parse`] but enforcing the qubit count.
pub fn pauli_parse_n(text: &str, n: usize) -> Result<PauliOperator, PauliParseError> {
    let found = text.chars().count();
    if found != n {
        return Err(PauliParseError::WrongLength { expected: n, found });
    }
    pauli_parse(text)
}

pub fn pauli_format(p: &PauliOperator) -> String {
    p.to_pauli_string()
}
