//! Gates and CNOT circuits.
//!
//! A CNOT circuit here is any circuit over `{X, CNOT}`. Its tableau has
//! `Γ = 0`, `B = 0`, `p = 0`, so it is determined by the invertible block
//! `Θ` (image of each `Z_j` is `±Z^{Θ e_j}`) and the sign bits `q`.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::f2::{BitMatrix, BitVector, F2Error};
use crate::pauli::PauliOperator;
use crate::stabilizer::StabilizerError;
use crate::tableau::CliffordTableau;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("CNOT control and target are both qubit {0}")]
    SameControlTarget(usize),
    #[error("Θ is singular over GF(2)")]
    SingularTheta,
    #[error("gate {0} is not allowed in a CNOT circuit")]
    NotCnotGate(Gate),
    #[error("tableau does not satisfy SᵀΛS = Λ")]
    NotSymplectic,
    #[error("tableau is not in the CNOT class (Γ, B and p must vanish)")]
    NotCnotTableau,
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    Shape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
    #[error(transparent)]
    F2(#[from] F2Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    Cnot { control: usize, target: usize },
    X(usize),
    Z(usize),
    H(usize),
    P(usize),
}

impl Gate {
    pub fn validate(&self, n: usize) -> Result<(), CircuitError> {
        let check = |qubit: usize| {
            if qubit < n {
                Ok(())
            } else {
                Err(CircuitError::QubitOutOfRange { qubit, n })
            }
        };
        match *self {
            Gate::Cnot { control, target } => {
                check(control)?;
                check(target)?;
                if control == target {
                    return Err(CircuitError::SameControlTarget(control));
                }
                Ok(())
            }
            Gate::X(a) | Gate::Z(a) | Gate::H(a) | Gate::P(a) => check(a),
        }
    }

    /// `g p g†`, assuming the gate is valid for `p`'s qubit count.
    pub fn conjugate(&self, p: &PauliOperator) -> PauliOperator {
        let mut negative = p.is_negative();
        let mut x = p.x_bits().clone();
        let mut z = p.z_bits().clone();
        match *self {
            Gate::X(a) => negative ^= z.get(a),
            Gate::Z(a) => negative ^= x.get(a),
            Gate::H(a) => {
                let (xa, za) = (x.get(a), z.get(a));
                negative ^= xa & za;
                x.set(a, za);
                z.set(a, xa);
            }
            Gate::P(a) => {
                let (xa, za) = (x.get(a), z.get(a));
                negative ^= xa & za;
                z.set(a, za ^ xa);
            }
            Gate::Cnot { control, target } => {
                let (xc, zc) = (x.get(control), z.get(control));
                let (xt, zt) = (x.get(target), z.get(target));
                negative ^= xc & zt & !(xt ^ zc);
                x.set(target, xt ^ xc);
                z.set(control, zc ^ zt);
            }
        }
        PauliOperator::new(negative, x, z).expect("x and z keep equal lengths")
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Cnot { control, target } => write!(f, "CNOT({control}->{target})"),
            Gate::X(a) => write!(f, "X({a})"),
            Gate::Z(a) => write!(f, "Z({a})"),
            Gate::H(a) => write!(f, "H({a})"),
            Gate::P(a) => write!(f, "P({a})"),
        }
    }
}

/// `count` uniformly chosen gates from `{H, P, CNOT}` on uniformly chosen
/// qubits; on a single qubit only `H` and `P` are available.
pub fn random_clifford_gates<R: Rng + ?Sized>(n: usize, count: usize, rng: &mut R) -> Vec<Gate> {
    assert!(n > 0, "random gates need at least one qubit");
    let kinds = if n == 1 { 2 } else { 3 };
    (0..count)
        .map(|_| match rng.gen_range(0..kinds) {
            0 => Gate::H(rng.gen_range(0..n)),
            1 => Gate::P(rng.gen_range(0..n)),
            _ => {
                let control = rng.gen_range(0..n);
                let mut target = rng.gen_range(0..n - 1);
                if target >= control {
                    target += 1;
                }
                Gate::Cnot { control, target }
            }
        })
        .collect()
}

/// A circuit over `{X, CNOT}` with its derived `(Θ, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnotCircuit {
    n: usize,
    gates: Vec<Gate>,
    theta: BitMatrix,
    q: BitVector,
}

impl CnotCircuit {
    pub fn new(n: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        let mut theta = BitMatrix::identity(n);
        let mut q = BitVector::zeros(n);
        for g in &gates {
            g.validate(n)?;
            match *g {
                // Z_t ↦ Z_c Z_t: every image gains bit c wherever it has bit t.
                Gate::Cnot { control, target } => theta.add_row(target, control),
                // X_a flips the sign of every image containing Z_a.
                Gate::X(a) => {
                    for j in 0..n {
                        if theta.get(a, j) {
                            q.flip(j);
                        }
                    }
                }
                other => return Err(CircuitError::NotCnotGate(other)),
            }
        }
        Ok(Self { n, gates, theta, q })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, Vec::new()).expect("empty circuit")
    }

    /// Gate list realizing `(Θ, q)`: X gates on the qubits with `q_j = 1`,
    /// then at most `n²` CNOTs from Gauss-Jordan elimination of `Θ`.
    pub fn synthesize(theta: &BitMatrix, q: &BitVector) -> Result<Self, CircuitError> {
        let n = theta.rows();
        if !theta.is_square() {
            return Err(CircuitError::Shape {
                expected: n,
                rows: theta.rows(),
                cols: theta.cols(),
            });
        }
        if q.len() != n {
            return Err(CircuitError::Stabilizer(StabilizerError::DimensionMismatch {
                expected: n,
                found: q.len(),
            }));
        }
        // Row op "row c += row t" is the effect of CNOT(c, t) on Θ. Reducing
        // Θ to I by ops R_1..R_k gives Θ = R_1 ⋯ R_k, and a gate list acts
        // as Θ = E_m ⋯ E_1, so the gates are the ops in reverse.
        let mut work = theta.clone();
        let mut ops = Vec::new();
        for j in 0..n {
            if !work.get(j, j) {
                let r = (j + 1..n)
                    .find(|&r| work.get(r, j))
                    .ok_or(CircuitError::SingularTheta)?;
                work.add_row(r, j);
                ops.push((j, r));
            }
            for i in 0..n {
                if i != j && work.get(i, j) {
                    work.add_row(j, i);
                    ops.push((i, j));
                }
            }
        }
        let mut gates: Vec<Gate> = q.ones().map(Gate::X).collect();
        gates.extend(
            ops.into_iter()
                .rev()
                .map(|(control, target)| Gate::Cnot { control, target }),
        );
        let circuit = Self::new(n, gates)?;
        debug_assert_eq!(&circuit.theta, theta);
        debug_assert_eq!(&circuit.q, q);
        Ok(circuit)
    }

    /// The circuit `C` with `C† Z^b C = (-1)^{s·b} Z^{M b}` for every `b`.
    ///
    /// Sample constraints fix this pullback map rather than `Θ` itself;
    /// `M = Θ^{-1}` and `s = Mᵀ q`.
    pub fn from_pullback(m: &BitMatrix, s: &BitVector) -> Result<Self, CircuitError> {
        let theta = m.invert().map_err(|_| CircuitError::SingularTheta)?;
        let q = theta.transpose().mul_vec(s)?;
        Self::synthesize(&theta, &q)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn theta(&self) -> &BitMatrix {
        &self.theta
    }

    pub fn q(&self) -> &BitVector {
        &self.q
    }

    /// `M = Θ^{-1}`: column `b` of `M` is the Z-support of `C† Z_b C`.
    pub fn pullback_matrix(&self) -> BitMatrix {
        self.theta.invert().expect("Θ of a valid circuit is invertible")
    }

    /// `s = Mᵀ q`: bit `b` is the sign of `C† Z_b C`.
    pub fn pullback_signs(&self) -> BitVector {
        self.pullback_matrix()
            .transpose()
            .mul_vec(&self.q)
            .expect("square Θ")
    }

    pub fn tableau(&self) -> CliffordTableau {
        CliffordTableau::from_gates(self.n, &self.gates).expect("gates validated on construction")
    }

    pub fn try_from_tableau(t: &CliffordTableau) -> Result<Self, CircuitError> {
        if !t.is_cnot_class() {
            return Err(CircuitError::NotCnotTableau);
        }
        Self::synthesize(&t.theta(), &t.q())
    }

    pub fn then(&self, other: &Self) -> Result<Self, CircuitError> {
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Self::new(self.n, gates)
    }
}

pub fn synthesize_cnot_from_theta(
    theta: &BitMatrix,
    q: &BitVector,
) -> Result<CnotCircuit, CircuitError> {
    CnotCircuit::synthesize(theta, q)
}

pub fn cnot_to_tableau(c: &CnotCircuit) -> CliffordTableau {
    c.tableau()
}
