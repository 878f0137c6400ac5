//! Efficient proper learners for two restricted distributions.

use rand::Rng;
use thiserror::Error;

use crate::circuit::{random_clifford_gates, CircuitError, CnotCircuit, Gate};
use crate::f2::{complete_to_basis, AffineSubspace, BitMatrix, BitVector, F2Error};
use crate::pauli::PauliOperator;
use crate::stabilizer::{Label, StabilizerError, StabilizerState};
use crate::tableau::CliffordTableau;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LearnerError {
    #[error("batch is empty")]
    EmptyBatch,
    #[error("measurement must be a non-identity Z-type Pauli")]
    NotZType,
    #[error("sample {0} has label 1/2; single-measurement batches carry binary labels")]
    NonBinaryLabel(usize),
    #[error("no CNOT circuit is consistent with the batch")]
    EmptyIntersection,
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    F2(#[from] F2Error),
}

/// Samples that all share one Z-type measurement and carry labels 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleMeasurementBatch {
    measurement: PauliOperator,
    samples: Vec<(StabilizerState, Label)>,
}

impl SingleMeasurementBatch {
    pub fn new(measurement: PauliOperator, samples: Vec<(StabilizerState, Label)>) -> Result<Self, LearnerError> {
        if samples.is_empty() {
            return Err(LearnerError::EmptyBatch);
        }
        if !measurement.is_z_type() || measurement.is_identity() {
            return Err(LearnerError::NotZType);
        }
        for (i, (state, label)) in samples.iter().enumerate() {
            if state.num_qubits() != measurement.num_qubits() {
                return Err(StabilizerError::DimensionMismatch {
                    expected: measurement.num_qubits(),
                    found: state.num_qubits(),
                }
                .into());
            }
            if *label == Label::Half {
                return Err(LearnerError::NonBinaryLabel(i));
            }
        }
        Ok(Self {
            measurement,
            samples,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.measurement.num_qubits()
    }

    pub fn measurement(&self) -> &PauliOperator {
        &self.measurement
    }

    pub fn samples(&self) -> &[(StabilizerState, Label)] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn to_sample_set(&self) -> crate::sample::SampleSet {
        let samples = self
            .samples
            .iter()
            .map(|(s, l)| {
                crate::sample::LabeledSample::new(s.clone(), self.measurement.clone(), *l)
                    .expect("dimensions validated")
            })
            .collect();
        crate::sample::SampleSet::from_samples(self.num_qubits(), samples).expect("dimensions validated")
    }
}

/// The set of `(u, t) ∈ GF(2)^{n+1}` for which `(-1)^t Z^u` gets every label
/// of the batch right, or `None` when no such pair exists.
///
/// A state's Z-type stabilizers `(-1)^{σ_r} Z^{z_r}` span `{(z_r, σ_r)}`;
/// label 1 asks `(u, t)` to lie in that span and label 0 in its translate
/// by `(0, 1)`.
pub fn single_measurement_constraints(batch: &SingleMeasurementBatch) -> Result<Option<AffineSubspace>, LearnerError> {
    let n = batch.num_qubits();
    let mut acc: Option<AffineSubspace> = None;
    for (state, label) in &batch.samples {
        let (support, signs) = state.z_support();
        let directions: Vec<BitVector> = (0..support.rows())
            .map(|r| {
                let mut v = support.row(r).clone();
                v.push(signs.get(r));
                v
            })
            .collect();
        let mut offset = BitVector::zeros(n + 1);
        offset.set(n, *label == Label::Zero);
        let here = AffineSubspace::new(offset, &directions)?;
        acc = match acc {
            None => Some(here),
            Some(a) => match a.intersect(&here)? {
                Some(i) => Some(i),
                None => return Ok(None),
            },
        };
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleMeasurementResult {
    pub circuit: CnotCircuit,
    /// Random vectors drawn while completing `p` and `u` to bases.
    pub completion_draws: usize,
}

/// Proper learner for batches that share one Z-type measurement `±Z^p`.
///
/// Intersects the per-sample constraints on `C†(±Z^p)C = ±(-1)^t Z^u`,
/// picks a point with `u ≠ 0` at random, then builds a circuit whose
/// pullback sends `p ↦ u` with sign `t`: `p` and `u` are completed to bases
/// by random draws and `M` maps one basis onto the other.
pub fn learn_single_measurement<R: Rng + ?Sized>(
    batch: &SingleMeasurementBatch,
    rng: &mut R,
) -> Result<SingleMeasurementResult, LearnerError> {
    let n = batch.num_qubits();
    let space = single_measurement_constraints(batch)?.ok_or(LearnerError::EmptyIntersection)?;
    let u_part = |v: &BitVector| v.slice(0, n);
    if u_part(space.offset()).is_zero() && space.basis().iter().all(|b| u_part(b).is_zero()) {
        return Err(LearnerError::EmptyIntersection);
    }
    let point = loop {
        let coeffs = rng.gen::<u64>().checked_shr(64 - space.dim() as u32).unwrap_or(0);
        let p = space.point_at(coeffs);
        if !u_part(&p).is_zero() {
            break p;
        }
    };
    let u = u_part(&point);
    let sign = point.get(n) ^ batch.measurement.is_negative();
    let p = batch.measurement.z_bits().clone();
    let from = complete_to_basis(&[p], n, rng)?;
    let to = complete_to_basis(&[u], n, rng)?;
    let b = BitMatrix::from_columns(n, &from.vectors)?;
    let b_inv = b.invert()?;
    let m = BitMatrix::from_columns(n, &to.vectors)?.try_mul(&b_inv)?;
    // s · b_1 = sign and s · b_i = 0 otherwise, i.e. s = B^{-T} (sign e_1).
    let mut e1 = BitVector::zeros(n);
    e1.set(0, sign);
    let s = b_inv.transpose().mul_vec(&e1)?;
    Ok(SingleMeasurementResult {
        circuit: CnotCircuit::from_pullback(&m, &s)?,
        completion_draws: from.draws + to.draws,
    })
}

/// `4n²` random gates from `{H, P, CNOT}`.
pub fn trivial_uniform_gates<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Gate> {
    random_clifford_gates(n, 4 * n * n, rng)
}

/// Tableau of [`trivial_uniform_gates`].
///
/// Under uniformly random Pauli measurements almost every label is ½ no
/// matter which circuit produced it, so any valid Clifford is a proper
/// hypothesis with small error.
pub fn trivial_uniform_learner<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CliffordTableau {
    CliffordTableau::from_gates(n, &trivial_uniform_gates(n, rng)).expect("generated gates are in range")
}
