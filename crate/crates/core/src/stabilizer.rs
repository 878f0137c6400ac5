//! Pure stabilizer states and the three-valued Pauli measurement.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::f2::{BitMatrix, BitVector};
use crate::pauli::{PauliOperator, PhasedPauli};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilizerError {
    #[error("qubit count mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("product has an imaginary phase")]
    ImaginaryPhase,
    #[error("generators {0} and {1} anticommute")]
    AnticommutingGenerators(usize, usize),
    #[error("generator {0} is dependent on the earlier ones")]
    DependentGenerator(usize),
    #[error("a pure state on {n} qubits needs {n} generators, got {found}")]
    WrongGeneratorCount { n: usize, found: usize },
    #[error("the identity is not a valid measurement")]
    IdentityMeasurement,
    #[error("dense simulation supports at most {max} qubits, got {n}")]
    TooManyQubits { n: usize, max: usize },
    #[error("encoded Pauli must have {expected} bits, got {found}")]
    MalformedEncoding { expected: usize, found: usize },
    #[error("invalid Pauli character {0:?}")]
    InvalidPauliChar(char),
}

/// Outcome of measuring `E = (I + P)/2`: the value `tr[E ρ]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Zero,
    Half,
    One,
}

impl Label {
    pub fn value(self) -> f64 {
        match self {
            Label::Zero => 0.0,
            Label::Half => 0.5,
            Label::One => 1.0,
        }
    }

    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Label::One
        } else {
            Label::Zero
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Zero => "0",
            Label::Half => "1/2",
            Label::One => "1",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    Plus,
    Minus,
    Absent,
}

/// The abelian group generated by `n` commuting, independent Paulis.
///
/// Besides the generators as given, a reduced copy is kept in row-echelon
/// form over the `x || z` bits (x part first) so that membership queries are
/// a single elimination pass.
#[derive(Clone)]
pub struct StabilizerGroup {
    generators: Vec<PauliOperator>,
    reduced: Vec<(usize, PauliOperator)>,
}

impl StabilizerGroup {
    pub fn new(generators: Vec<PauliOperator>) -> Result<Self, StabilizerError> {
        let n = generators.first().map_or(0, PauliOperator::num_qubits);
        if generators.len() != n {
            return Err(StabilizerError::WrongGeneratorCount {
                n,
                found: generators.len(),
            });
        }
        for g in &generators {
            g.check_dims(&generators[0])?;
        }
        for i in 0..n {
            for j in i + 1..n {
                if !generators[i].commutes(&generators[j])? {
                    return Err(StabilizerError::AnticommutingGenerators(i, j));
                }
            }
        }
        let mut reduced: Vec<(usize, PauliOperator)> = Vec::with_capacity(n);
        for (i, g) in generators.iter().enumerate() {
            let mut r = g.clone();
            for (pivot, row) in &reduced {
                if r.has_bit(*pivot) {
                    r = r.try_mul(row)?;
                }
            }
            let pivot = r.pivot().ok_or(StabilizerError::DependentGenerator(i))?;
            for (_, row) in reduced.iter_mut() {
                if row.has_bit(pivot) {
                    *row = row.try_mul(&r)?;
                }
            }
            reduced.push((pivot, r));
        }
        reduced.sort_by_key(|(p, _)| *p);
        Ok(Self {
            generators,
            reduced,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    /// Whether `p`, `-p`, or neither belongs to the group.
    pub fn contains(&self, p: &PauliOperator) -> Result<Membership, StabilizerError> {
        if p.num_qubits() != self.num_qubits() {
            return Err(StabilizerError::DimensionMismatch {
                expected: self.num_qubits(),
                found: p.num_qubits(),
            });
        }
        let mut acc = PhasedPauli::from(p);
        for (pivot, row) in &self.reduced {
            let hit = if *pivot < self.num_qubits() {
                acc.x.get(*pivot)
            } else {
                acc.z.get(*pivot - self.num_qubits())
            };
            if hit {
                acc.mul_assign(row);
            }
        }
        if !acc.is_identity() {
            return Ok(Membership::Absent);
        }
        // p · g = i^k I with g an involution in the group, so p = i^k g.
        match acc.phase {
            0 => Ok(Membership::Plus),
            2 => Ok(Membership::Minus),
            _ => Err(StabilizerError::ImaginaryPhase),
        }
    }

    /// Echelon generators keyed by pivot (x bits first, then z bits).
    pub(crate) fn reduced_rows(&self) -> &[(usize, PauliOperator)] {
        &self.reduced
    }

    /// Generators of the subgroup `G ∩ ±{I, Z}^{⊗n}`, in echelon form.
    pub fn z_subgroup(&self) -> Vec<PauliOperator> {
        let n = self.num_qubits();
        self.reduced
            .iter()
            .filter(|(pivot, _)| *pivot >= n)
            .map(|(_, row)| row.clone())
            .collect()
    }

    /// Every group element; only sensible for small `n`.
    pub fn elements(&self) -> Vec<PauliOperator> {
        let n = self.num_qubits();
        assert!(n < 20, "group of order 2^{n} is too large to list");
        (0..1u64 << n)
            .map(|mask| {
                let mut acc = PhasedPauli::identity(n);
                for (i, g) in self.generators.iter().enumerate() {
                    if (mask >> i) & 1 == 1 {
                        acc.mul_assign(g);
                    }
                }
                acc.into_real().expect("commuting Hermitian Paulis")
            })
            .collect()
    }
}

impl PartialEq for StabilizerGroup {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for StabilizerGroup {}

impl std::hash::Hash for StabilizerGroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.generators.hash(state);
    }
}

impl fmt::Debug for StabilizerGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.generators.iter().map(|g| g.to_string())).finish()
    }
}

/// `ρ = 2^{-n} Σ_{g ∈ G} g` for a stabilizer group `G` of order `2^n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StabilizerState {
    group: StabilizerGroup,
}

impl StabilizerState {
    pub fn new(generators: Vec<PauliOperator>) -> Result<Self, StabilizerError> {
        StabilizerGroup::new(generators).map(|group| Self { group })
    }

    pub fn from_group(group: StabilizerGroup) -> Self {
        Self { group }
    }

    /// `|0…0⟩`, stabilized by `Z_1, …, Z_n`.
    pub fn zero(n: usize) -> Self {
        Self::basis(&BitVector::zeros(n))
    }

    /// Computational basis state `|b⟩`, stabilized by `(-1)^{b_i} Z_i`.
    pub fn basis(bits: &BitVector) -> Self {
        let n = bits.len();
        let generators = (0..n)
            .map(|i| PauliOperator::z_on(n, i).with_sign(bits.get(i)))
            .collect();
        Self::new(generators).expect("single-qubit Z generators are valid")
    }

    /// `ρ(±Z^{v_1}, …, ±Z^{v_n})` for a basis `v_i` of GF(2)^n, with
    /// generator `i` negative when `negative[i]` is set.
    pub fn from_z_basis(
        vectors: &[BitVector],
        negative: &BitVector,
    ) -> Result<Self, StabilizerError> {
        if negative.len() != vectors.len() {
            return Err(StabilizerError::DimensionMismatch {
                expected: vectors.len(),
                found: negative.len(),
            });
        }
        let generators = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| PauliOperator::z_power(v).with_sign(negative.get(i)))
            .collect();
        Self::new(generators)
    }

    /// A random state reached from `|b⟩` (uniform `b`) by `gates` random
    /// single-qubit Cliffords and CNOTs.
    pub fn random<R: Rng + ?Sized>(n: usize, gates: usize, rng: &mut R) -> Self {
        let start = Self::basis(&BitVector::random(n, rng));
        if n == 0 {
            return start;
        }
        let circuit = crate::circuit::random_clifford_gates(n, gates, rng);
        crate::tableau::CliffordTableau::from_gates(n, &circuit)
            .expect("generated gates are in range")
            .apply_to_state(&start)
            .expect("matching qubit counts")
    }

    pub fn num_qubits(&self) -> usize {
        self.group.num_qubits()
    }

    pub fn group(&self) -> &StabilizerGroup {
        &self.group
    }

    pub fn generators(&self) -> &[PauliOperator] {
        self.group.generators()
    }

    /// `tr[(I + P)/2 · ρ]`, which is 1, 0 or ½ according to whether `P`,
    /// `-P`, or neither stabilizes `ρ`.
    pub fn measure(&self, p: &PauliOperator) -> Result<Label, StabilizerError> {
        if p.is_identity() {
            return Err(StabilizerError::IdentityMeasurement);
        }
        Ok(match self.group.contains(p)? {
            Membership::Plus => Label::One,
            Membership::Minus => Label::Zero,
            Membership::Absent => Label::Half,
        })
    }

    /// Matrix whose rows are the Z-supports of `G ∩ ±{I, Z}^{⊗n}`'s echelon
    /// generators, together with their signs.
    pub fn z_support(&self) -> (BitMatrix, BitVector) {
        let n = self.num_qubits();
        let zs = self.group.z_subgroup();
        let signs = BitVector::from_bools(zs.iter().map(PauliOperator::is_negative));
        let rows = zs.iter().map(|p| p.z_bits().clone()).collect();
        (BitMatrix::from_rows(n, rows).expect("rows of length n"), signs)
    }
}

pub fn group_contains(
    g: &StabilizerGroup,
    p: &PauliOperator,
) -> Result<Membership, StabilizerError> {
    g.contains(p)
}

pub fn measurement_expectation(
    rho: &StabilizerState,
    p: &PauliOperator,
) -> Result<Label, StabilizerError> {
    rho.measure(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn zero_state_membership() {
        let rho = StabilizerState::zero(3);
        assert_eq!(rho.group().contains(&p("ZII")).unwrap(), Membership::Plus);
        assert_eq!(rho.group().contains(&p("-ZII")).unwrap(), Membership::Minus);
        assert_eq!(rho.group().contains(&p("XII")).unwrap(), Membership::Absent);
        assert_eq!(rho.group().contains(&p("ZZZ")).unwrap(), Membership::Plus);
    }

    #[test]
    fn single_qubit_values() {
        let zero = StabilizerState::zero(1);
        let one = StabilizerState::new(vec![p("-Z")]).unwrap();
        assert_eq!(zero.measure(&p("Z")).unwrap(), Label::One);
        assert_eq!(one.measure(&p("Z")).unwrap(), Label::Zero);
        assert_eq!(zero.measure(&p("X")).unwrap(), Label::Half);
        assert_eq!(zero.measure(&p("I")), Err(StabilizerError::IdentityMeasurement));
    }

    #[test]
    fn bell_state_signs() {
        let bell = StabilizerState::new(vec![p("XX"), p("ZZ")]).unwrap();
        assert_eq!(bell.measure(&p("-YY")).unwrap(), Label::One);
        assert_eq!(bell.measure(&p("YY")).unwrap(), Label::Zero);
        assert_eq!(bell.measure(&p("ZI")).unwrap(), Label::Half);
    }

    #[test]
    fn construction_rejects_bad_generators() {
        assert_eq!(
            StabilizerGroup::new(vec![p("XI"), p("ZI")]).unwrap_err(),
            StabilizerError::AnticommutingGenerators(0, 1)
        );
        assert_eq!(
            StabilizerGroup::new(vec![p("ZZ"), p("-ZZ")]).unwrap_err(),
            StabilizerError::DependentGenerator(1)
        );
        assert!(StabilizerGroup::new(vec![p("ZI")]).is_err());
    }

    #[test]
    fn z_subgroup_of_mixed_state() {
        let rho = StabilizerState::new(vec![p("XX"), p("-ZZ"), p("IIZ")]).unwrap_err();
        assert!(matches!(rho, StabilizerError::WrongGeneratorCount { .. }));
        let rho = StabilizerState::new(vec![p("XXI"), p("-ZZI"), p("IIZ")]).unwrap();
        let (support, signs) = rho.z_support();
        assert_eq!(support.rows(), 2);
        assert_eq!(signs.count_ones(), 1);
    }
}
