//! Clifford tableaux.
//!
//! A Clifford `U` is stored through the images `U X_j U†` and `U Z_j U†` of
//! the canonical generators. As a `2n × 2n` matrix `S`, column `2j` is the
//! image of `X_j` and column `2j + 1` the image of `Z_j`; within a column,
//! row `2i` holds the X bit and row `2i + 1` the Z bit of qubit `i`. The
//! phase bits are `p_j` (sign of the `X_j` image) and `q_j` (sign of the
//! `Z_j` image). With this layout the blocks are `α_ij = S[2i][2j]`,
//! `β_ij = S[2i+1][2j]`, `γ_ij = S[2i][2j+1]`, `θ_ij = S[2i+1][2j+1]`.

use rand::Rng;

use crate::circuit::{random_clifford_gates, CircuitError, Gate};
use crate::f2::{BitMatrix, BitVector};
use crate::pauli::{PauliOperator, PhasedPauli};
use crate::sample::LabeledSample;
use crate::stabilizer::{Label, StabilizerError, StabilizerState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `C P C†`.
    Forward,
    /// `C† P C`.
    Inverse,
}

/// `Λ(n)`: block diagonal with `n` copies of `[[0,1],[1,0]]`.
pub fn lambda(n: usize) -> BitMatrix {
    let mut m = BitMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        m.set(2 * i, 2 * i + 1, true);
        m.set(2 * i + 1, 2 * i, true);
    }
    m
}

/// `Sᵀ Λ(n) S = Λ(n)`; `false` for a matrix of the wrong shape.
pub fn is_symplectic(s: &BitMatrix, n: usize) -> bool {
    if s.rows() != 2 * n || s.cols() != 2 * n {
        return false;
    }
    let l = lambda(n);
    &(&s.transpose() * &l) * s == l
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CliffordTableau {
    images: Vec<PauliOperator>,
}

impl CliffordTableau {
    pub fn identity(n: usize) -> Self {
        let images = (0..n)
            .flat_map(|j| [PauliOperator::x_on(n, j), PauliOperator::z_on(n, j)])
            .collect();
        Self { images }
    }

    /// Tableau of the circuit applying `gates` in order, first gate first.
    pub fn from_gates(n: usize, gates: &[Gate]) -> Result<Self, CircuitError> {
        let mut t = Self::identity(n);
        for g in gates {
            t.apply_gate_mut(g)?;
        }
        Ok(t)
    }

    /// Builds a tableau from `S` and the `2n` phase bits, rejecting any `S`
    /// that fails the symplectic condition.
    pub fn from_parts(s: &BitMatrix, phases: &BitVector) -> Result<Self, CircuitError> {
        let n = s.rows() / 2;
        if s.rows() % 2 != 0 || !s.is_square() {
            return Err(CircuitError::Shape {
                expected: 2 * n,
                rows: s.rows(),
                cols: s.cols(),
            });
        }
        if phases.len() != 2 * n {
            return Err(CircuitError::Stabilizer(StabilizerError::DimensionMismatch {
                expected: 2 * n,
                found: phases.len(),
            }));
        }
        if !is_symplectic(s, n) {
            return Err(CircuitError::NotSymplectic);
        }
        let images = (0..2 * n)
            .map(|c| {
                let x = BitVector::from_bools((0..n).map(|i| s.get(2 * i, c)));
                let z = BitVector::from_bools((0..n).map(|i| s.get(2 * i + 1, c)));
                PauliOperator::new(phases.get(c), x, z).expect("equal lengths")
            })
            .collect();
        Ok(Self { images })
    }

    /// Tableau of `4n²`-style random gate sequences over `{H, P, CNOT}`.
    pub fn random<R: Rng + ?Sized>(n: usize, gates: usize, rng: &mut R) -> Self {
        Self::from_gates(n, &random_clifford_gates(n, gates, rng)).expect("gates in range")
    }

    pub fn num_qubits(&self) -> usize {
        self.images.len() / 2
    }

    /// `U X_j U†`.
    pub fn x_image(&self, j: usize) -> &PauliOperator {
        &self.images[2 * j]
    }

    /// `U Z_j U†`.
    pub fn z_image(&self, j: usize) -> &PauliOperator {
        &self.images[2 * j + 1]
    }

    /// The `2n × 2n` symplectic matrix `S`.
    pub fn matrix(&self) -> BitMatrix {
        let n = self.num_qubits();
        let mut s = BitMatrix::zeros(2 * n, 2 * n);
        for (c, img) in self.images.iter().enumerate() {
            for i in 0..n {
                s.set(2 * i, c, img.x_bits().get(i));
                s.set(2 * i + 1, c, img.z_bits().get(i));
            }
        }
        s
    }

    /// `(p_1, q_1, …, p_n, q_n)`, one bit per column of `S`.
    pub fn phases(&self) -> BitVector {
        BitVector::from_bools(self.images.iter().map(PauliOperator::is_negative))
    }

    fn block(&self, row_offset: usize, col_offset: usize) -> BitMatrix {
        let n = self.num_qubits();
        let s = self.matrix();
        let mut out = BitMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, s.get(2 * i + row_offset, 2 * j + col_offset));
            }
        }
        out
    }

    pub fn alpha(&self) -> BitMatrix {
        self.block(0, 0)
    }

    pub fn beta(&self) -> BitMatrix {
        self.block(1, 0)
    }

    pub fn gamma(&self) -> BitMatrix {
        self.block(0, 1)
    }

    pub fn theta(&self) -> BitMatrix {
        self.block(1, 1)
    }

    pub fn p(&self) -> BitVector {
        BitVector::from_bools((0..self.num_qubits()).map(|j| self.x_image(j).is_negative()))
    }

    pub fn q(&self) -> BitVector {
        BitVector::from_bools((0..self.num_qubits()).map(|j| self.z_image(j).is_negative()))
    }

    /// `Γ = 0`, `B = 0` and `p = 0`: the tableau of an `{X, CNOT}` circuit.
    pub fn is_cnot_class(&self) -> bool {
        self.gamma().is_zero() && self.beta().is_zero() && self.p().is_zero()
    }

    pub fn is_valid(&self) -> bool {
        is_symplectic(&self.matrix(), self.num_qubits())
    }

    pub fn apply_gate_mut(&mut self, g: &Gate) -> Result<(), CircuitError> {
        g.validate(self.num_qubits())?;
        for img in &mut self.images {
            *img = g.conjugate(img);
        }
        Ok(())
    }

    /// Tableau of `g ∘ C`: the gate acts after the circuit.
    pub fn apply_gate(&self, g: &Gate) -> Result<Self, CircuitError> {
        let mut t = self.clone();
        t.apply_gate_mut(g)?;
        Ok(t)
    }

    /// Tableau of `other ∘ self`: `self` acts first.
    pub fn then(&self, other: &Self) -> Result<Self, StabilizerError> {
        let images = self
            .images
            .iter()
            .map(|img| other.conjugate_forward(img))
            .collect::<Result<_, _>>()?;
        Ok(Self { images })
    }

    fn conjugate_forward(&self, p: &PauliOperator) -> Result<PauliOperator, StabilizerError> {
        let n = self.num_qubits();
        if p.num_qubits() != n {
            return Err(StabilizerError::DimensionMismatch {
                expected: n,
                found: p.num_qubits(),
            });
        }
        // σ(x, z) = (-1)^s ∏_i i^{x_i z_i} X_i^{x_i} Z_i^{z_i}.
        let y_count = (p.x_bits() & p.z_bits()).count_ones();
        let mut acc = PhasedPauli::identity(n);
        acc.phase = ((y_count + 2 * usize::from(p.is_negative())) % 4) as u8;
        for i in 0..n {
            if p.x_bits().get(i) {
                acc.mul_assign(self.x_image(i));
            }
            if p.z_bits().get(i) {
                acc.mul_assign(self.z_image(i));
            }
        }
        acc.into_real().ok_or(StabilizerError::ImaginaryPhase)
    }

    /// The tableau of `U†`.
    pub fn inverse(&self) -> Self {
        let n = self.num_qubits();
        // S^{-1} = Λ Sᵀ Λ; the sign of each inverse image is whatever makes
        // its forward image come out positive.
        let l = lambda(n);
        let inv = &(&l * &self.matrix().transpose()) * &l;
        let images = (0..2 * n)
            .map(|c| {
                let x = BitVector::from_bools((0..n).map(|i| inv.get(2 * i, c)));
                let z = BitVector::from_bools((0..n).map(|i| inv.get(2 * i + 1, c)));
                let candidate = PauliOperator::new(false, x, z).expect("equal lengths");
                let image = self
                    .conjugate_forward(&candidate)
                    .expect("images of a valid tableau commute correctly");
                candidate.with_sign(image.is_negative())
            })
            .collect();
        Self { images }
    }

    pub fn conjugate(
        &self,
        p: &PauliOperator,
        direction: Direction,
    ) -> Result<PauliOperator, StabilizerError> {
        match direction {
            Direction::Forward => self.conjugate_forward(p),
            Direction::Inverse => self.inverse().conjugate_forward(p),
        }
    }

    /// `C ρ C†`.
    pub fn apply_to_state(&self, rho: &StabilizerState) -> Result<StabilizerState, StabilizerError> {
        let generators = rho
            .generators()
            .iter()
            .map(|g| self.conjugate_forward(g))
            .collect::<Result<Vec<_>, _>>()?;
        StabilizerState::new(generators)
    }

    /// The label `tr[E^P C ρ C†]` this hypothesis predicts for a sample.
    pub fn evaluate_sample(&self, sample: &LabeledSample) -> Result<Label, StabilizerError> {
        self.apply_to_state(sample.state())?.measure(sample.measurement())
    }
}

pub fn apply_gate(t: &CliffordTableau, g: &Gate) -> Result<CliffordTableau, CircuitError> {
    t.apply_gate(g)
}

pub fn conjugate_pauli(
    t: &CliffordTableau,
    p: &PauliOperator,
    direction: Direction,
) -> Result<PauliOperator, StabilizerError> {
    t.conjugate(p, direction)
}

pub fn apply_circuit_to_state(
    t: &CliffordTableau,
    rho: &StabilizerState,
) -> Result<StabilizerState, StabilizerError> {
    t.apply_to_state(rho)
}

pub fn evaluate_sample(
    hypothesis: &CliffordTableau,
    sample: &LabeledSample,
) -> Result<Label, StabilizerError> {
    hypothesis.evaluate_sample(sample)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn symplectic_examples() {
        assert!(is_symplectic(&BitMatrix::identity(4), 2));
        assert!(is_symplectic(&lambda(3), 3));
        // On one qubit the symplectic group is SL(2, 2), so every invertible
        // 2x2 matrix qualifies.
        assert!(is_symplectic(&BitMatrix::from_strs(&["11", "01"]).unwrap(), 1));
        assert!(!is_symplectic(&BitMatrix::from_strs(&["11", "11"]).unwrap(), 1));
        // X_1 ↦ X_0 X_1 with Z_0 fixed breaks their anticommutation.
        let mut s = BitMatrix::identity(4);
        s.set(0, 2, true);
        assert!(!is_symplectic(&s, 2));
        assert!(!is_symplectic(&BitMatrix::identity(3), 1));
    }

    #[test]
    fn cnot_tableau_blocks() {
        let cnot = Gate::Cnot {
            control: 0,
            target: 1,
        };
        let t = CliffordTableau::identity(2).apply_gate(&cnot).unwrap();
        assert_eq!(t.theta(), BitMatrix::from_strs(&["11", "01"]).unwrap());
        assert_eq!(t.alpha(), BitMatrix::from_strs(&["10", "11"]).unwrap());
        assert!(t.is_cnot_class());
        assert_eq!(t.conjugate(&p("IZ"), Direction::Forward).unwrap(), p("ZZ"));
    }

    #[test]
    fn x_gate_flips_q_only() {
        let t = CliffordTableau::identity(2).apply_gate(&Gate::X(0)).unwrap();
        assert_eq!(t.matrix(), BitMatrix::identity(4));
        assert_eq!(t.q(), BitVector::unit(2, 0));
        assert!(t.p().is_zero());
    }

    #[test]
    fn hadamard_is_an_involution() {
        let t = CliffordTableau::from_gates(2, &[Gate::P(0), Gate::Cnot { control: 0, target: 1 }])
            .unwrap();
        let tt = t.apply_gate(&Gate::H(0)).unwrap().apply_gate(&Gate::H(0)).unwrap();
        assert_eq!(t, tt);
    }

    #[test]
    fn inverse_round_trip() {
        let t = CliffordTableau::from_gates(
            3,
            &[Gate::H(0), Gate::P(1), Gate::Cnot { control: 0, target: 2 }, Gate::P(0)],
        )
        .unwrap();
        for s in ["XYZ", "-ZZI", "IYX"] {
            let f = t.conjugate(&p(s), Direction::Forward).unwrap();
            assert_eq!(t.conjugate(&f, Direction::Inverse).unwrap(), p(s));
        }
        assert_eq!(t.then(&t.inverse()).unwrap(), CliffordTableau::identity(3));
    }

    #[test]
    fn cnot_maps_ten_to_eleven() {
        let cnot = CliffordTableau::from_gates(2, &[Gate::Cnot { control: 0, target: 1 }]).unwrap();
        let ten = StabilizerState::basis(&"10".parse().unwrap());
        let out = cnot.apply_to_state(&ten).unwrap();
        assert_eq!(out.measure(&p("-ZI")).unwrap(), Label::One);
        assert_eq!(out.measure(&p("-IZ")).unwrap(), Label::One);
    }
}
