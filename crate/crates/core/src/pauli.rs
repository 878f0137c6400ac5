//! Hermitian n-qubit Pauli operators with a real sign.
//!
//! A Pauli is stored as `(-1)^negative · ⊗_i σ(x_i, z_i)` with the per-qubit
//! code `I = (0,0)`, `X = (1,0)`, `Z = (0,1)`, `Y = (1,1)`. Because `Y` is
//! stored as itself (not as `XZ`), every stored operator is Hermitian and
//! commutation is exactly the symplectic form on the `(x, z)` bits.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::f2::BitVector;
use crate::stabilizer::StabilizerError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOperator {
    negative: bool,
    x: BitVector,
    z: BitVector,
}

impl PauliOperator {
    pub fn new(negative: bool, x: BitVector, z: BitVector) -> Result<Self, StabilizerError> {
        if x.len() != z.len() {
            return Err(StabilizerError::DimensionMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(Self { negative, x, z })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            negative: false,
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
        }
    }

    pub fn x_on(n: usize, qubit: usize) -> Self {
        Self::x_power(&BitVector::unit(n, qubit))
    }

    pub fn z_on(n: usize, qubit: usize) -> Self {
        Self::z_power(&BitVector::unit(n, qubit))
    }

    pub fn y_on(n: usize, qubit: usize) -> Self {
        let e = BitVector::unit(n, qubit);
        Self {
            negative: false,
            x: e.clone(),
            z: e,
        }
    }

    /// `Z^v = ∏ Z_i^{v_i}`.
    pub fn z_power(v: &BitVector) -> Self {
        Self {
            negative: false,
            x: BitVector::zeros(v.len()),
            z: v.clone(),
        }
    }

    /// `X^v = ∏ X_i^{v_i}`.
    pub fn x_power(v: &BitVector) -> Self {
        Self {
            negative: false,
            x: v.clone(),
            z: BitVector::zeros(v.len()),
        }
    }

    /// Uniformly random signed Pauli (identity included).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self {
            negative: rng.gen(),
            x: BitVector::random(n, rng),
            z: BitVector::random(n, rng),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn x_bits(&self) -> &BitVector {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVector {
        &self.z
    }

    /// `true` for `±I`.
    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// `true` when the operator lies in `±{I, Z}^{⊗n}`.
    pub fn is_z_type(&self) -> bool {
        self.x.is_zero()
    }

    pub fn negated(&self) -> Self {
        Self {
            negative: !self.negative,
            ..self.clone()
        }
    }

    pub fn with_sign(&self, negative: bool) -> Self {
        Self {
            negative,
            ..self.clone()
        }
    }

    pub(crate) fn check_dims(&self, other: &Self) -> Result<(), StabilizerError> {
        if self.num_qubits() != other.num_qubits() {
            return Err(StabilizerError::DimensionMismatch {
                expected: self.num_qubits(),
                found: other.num_qubits(),
            });
        }
        Ok(())
    }

    pub fn commutes(&self, other: &Self) -> Result<bool, StabilizerError> {
        self.check_dims(other)?;
        Ok(self.x.dot(&other.z) == self.z.dot(&other.x))
    }

    /// Product `self · other`, which must have a real phase.
    pub fn try_mul(&self, other: &Self) -> Result<Self, StabilizerError> {
        self.check_dims(other)?;
        let mut acc = PhasedPauli::from(self);
        acc.mul_assign(other);
        acc.into_real().ok_or(StabilizerError::ImaginaryPhase)
    }

    /// Bit encoding: per qubit the `(x, z)` code pair, then one sign bit.
    pub fn encode(&self) -> BitVector {
        let n = self.num_qubits();
        let mut bits = BitVector::zeros(2 * n + 1);
        for i in 0..n {
            bits.set(2 * i, self.x.get(i));
            bits.set(2 * i + 1, self.z.get(i));
        }
        bits.set(2 * n, self.negative);
        bits
    }

    pub fn decode(bits: &BitVector, n: usize) -> Result<Self, StabilizerError> {
        if bits.len() != 2 * n + 1 {
            return Err(StabilizerError::MalformedEncoding {
                expected: 2 * n + 1,
                found: bits.len(),
            });
        }
        Ok(Self {
            negative: bits.get(2 * n),
            x: BitVector::from_bools((0..n).map(|i| bits.get(2 * i))),
            z: BitVector::from_bools((0..n).map(|i| bits.get(2 * i + 1))),
        })
    }

    /// Index of the first set bit in the `x || z` layout.
    pub(crate) fn pivot(&self) -> Option<usize> {
        self.x
            .first_one()
            .or_else(|| self.z.first_one().map(|i| i + self.num_qubits()))
    }

    pub(crate) fn has_bit(&self, index: usize) -> bool {
        let n = self.num_qubits();
        if index < n {
            self.x.get(index)
        } else {
            self.z.get(index - n)
        }
    }
}

pub fn commutes(p: &PauliOperator, q: &PauliOperator) -> Result<bool, StabilizerError> {
    p.commutes(q)
}

pub fn z_power(v: &BitVector) -> PauliOperator {
    PauliOperator::z_power(v)
}

pub fn x_power(v: &BitVector) -> PauliOperator {
    PauliOperator::x_power(v)
}

pub fn encode_pauli(p: &PauliOperator) -> BitVector {
    p.encode()
}

pub fn decode_pauli(bits: &BitVector, n: usize) -> Result<PauliOperator, StabilizerError> {
    PauliOperator::decode(bits, n)
}

/// `i^phase · σ(x, z)`: a Pauli with an arbitrary phase in `{±1, ±i}`.
///
/// Used as an accumulator when multiplying operators whose partial products
/// may be anti-Hermitian even though the final product is not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhasedPauli {
    pub phase: u8,
    pub x: BitVector,
    pub z: BitVector,
}

impl PhasedPauli {
    pub fn identity(n: usize) -> Self {
        Self {
            phase: 0,
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
        }
    }

    /// `self ← self · rhs`.
    ///
    /// Writing `σ(x, z) = i^{|x∧z|} X^x Z^z`, the product picks up
    /// `(-1)^{z_l · x_r}` from commuting `Z^{z_l}` past `X^{x_r}`.
    pub fn mul_assign(&mut self, rhs: &PauliOperator) {
        let self_y = (&self.x & &self.z).count_ones();
        let rhs_y = (&rhs.x & &rhs.z).count_ones();
        let swap = usize::from(self.z.dot(&rhs.x));
        self.x ^= &rhs.x;
        self.z ^= &rhs.z;
        let out_y = (&self.x & &self.z).count_ones();
        let k = self.phase as usize + 2 * usize::from(rhs.negative) + self_y + rhs_y + 2 * swap + 4 * out_y
            - out_y;
        self.phase = (k % 4) as u8;
    }

    pub fn times_i(&mut self, power: u8) {
        self.phase = (self.phase + power) % 4;
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// The Hermitian operator, or `None` if the phase is `±i`.
    pub fn into_real(self) -> Option<PauliOperator> {
        match self.phase {
            0 | 2 => Some(PauliOperator {
                negative: self.phase == 2,
                x: self.x,
                z: self.z,
            }),
            _ => None,
        }
    }
}

impl From<&PauliOperator> for PhasedPauli {
    fn from(p: &PauliOperator) -> Self {
        Self {
            phase: if p.negative { 2 } else { 0 },
            x: p.x.clone(),
            z: p.z.clone(),
        }
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        for i in 0..self.num_qubits() {
            let c = match (self.x.get(i), self.z.get(i)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = StabilizerError;

    /// Parses `[+|-]` followed by one of `IXYZ` per qubit, qubit 0 first.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let mut x = BitVector::zeros(0);
        let mut z = BitVector::zeros(0);
        for c in body.chars() {
            let (xb, zb) = match c {
                'I' => (false, false),
                'X' => (true, false),
                'Z' => (false, true),
                'Y' => (true, true),
                other => return Err(StabilizerError::InvalidPauliChar(other)),
            };
            x.push(xb);
            z.push(zb);
        }
        Ok(Self { negative, x, z })
    }
}
