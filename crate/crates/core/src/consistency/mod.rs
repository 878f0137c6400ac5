//! Consistency checking and search over the CNOT hypothesis class.

mod brute;
mod complexity;
mod decision;
mod pac;
mod small;

pub use brute::{brute_force_search, brute_force_search_with, SearchOptions, MAX_BRUTE_FORCE_QUBITS};
pub use complexity::{sample_complexity, CNOT_N8_SAMPLES, LearningParameters, SampleComplexity};
pub use decision::{brute_force_decider, search_from_decision};
pub use pac::{coupon_collector_draws, pac_decide, pac_learner, PacOutcome, PacReport};

pub use crate::reduction::affine_family_search;

use std::time::Duration;

use thiserror::Error;

use crate::circuit::{CircuitError, CnotCircuit};
use crate::sample::SampleSet;
use crate::stabilizer::StabilizerError;
use crate::tableau::CliffordTableau;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConsistencyError {
    #[error("exhaustive search supports at most {max} qubits, got {n}")]
    TooManyQubits { n: usize, max: usize },
    #[error("hypothesis acts on {hypothesis} qubits but samples on {samples}")]
    DimensionMismatch { hypothesis: usize, samples: usize },
    #[error("decision oracle is inconsistent: {0}")]
    OracleFault(String),
    #[error("invalid learning parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found(CnotCircuit),
    NoneExists,
}

impl Outcome {
    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn circuit(&self) -> Option<&CnotCircuit> {
        match self {
            Outcome::Found(c) => Some(c),
            Outcome::NoneExists => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Complete `(M, s)` candidates evaluated against every sample.
    pub circuits_examined: u64,
    /// Partial assignments rejected before reaching a leaf.
    pub prunes: u64,
    /// Calls made to a decision oracle.
    pub oracle_calls: u64,
    pub wall_time: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: Outcome,
    pub stats: SearchStats,
}

/// A hypothesis to verify: an arbitrary Clifford, or a CNOT circuit whose
/// tableau must also have `Γ = 0`, `B = 0` and `p = 0`.
#[derive(Clone, Copy, Debug)]
pub enum Hypothesis<'a> {
    Clifford(&'a CliffordTableau),
    Cnot(&'a CnotCircuit),
}

impl<'a> From<&'a CliffordTableau> for Hypothesis<'a> {
    fn from(t: &'a CliffordTableau) -> Self {
        Hypothesis::Clifford(t)
    }
}

impl<'a> From<&'a CnotCircuit> for Hypothesis<'a> {
    fn from(c: &'a CnotCircuit) -> Self {
        Hypothesis::Cnot(c)
    }
}

/// Index of the first sample whose label the hypothesis gets wrong, or
/// `Ok(None)` when it is consistent with all of them. Each sample costs one
/// conjugation `C† P C` and one membership test against `ρ`'s group.
pub fn first_inconsistency<'a>(
    h: impl Into<Hypothesis<'a>>,
    s: &SampleSet,
) -> Result<Option<usize>, ConsistencyError> {
    let tableau = match h.into() {
        Hypothesis::Clifford(t) => t.clone(),
        Hypothesis::Cnot(c) => {
            let t = c.tableau();
            if !t.is_cnot_class() {
                return Err(CircuitError::NotCnotTableau.into());
            }
            t
        }
    };
    if tableau.num_qubits() != s.num_qubits() {
        return Err(ConsistencyError::DimensionMismatch {
            hypothesis: tableau.num_qubits(),
            samples: s.num_qubits(),
        });
    }
    let inverse = tableau.inverse();
    for (i, sample) in s.iter().enumerate() {
        let pulled = inverse.conjugate(sample.measurement(), crate::tableau::Direction::Forward)?;
        if sample.state().measure(&pulled)? != sample.label() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

pub fn check_consistent<'a>(
    h: impl Into<Hypothesis<'a>>,
    s: &SampleSet,
) -> Result<bool, ConsistencyError> {
    first_inconsistency(h, s).map(|v| v.is_none())
}
