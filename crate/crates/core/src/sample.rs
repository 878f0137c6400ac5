//! Labeled training samples `(ρ, E^P, tr[E^P C ρ C†])`.

use crate::pauli::PauliOperator;
use crate::stabilizer::{Label, StabilizerError, StabilizerState};
use crate::tableau::CliffordTableau;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledSample {
    state: StabilizerState,
    measurement: PauliOperator,
    label: Label,
}

impl LabeledSample {
    pub fn new(
        state: StabilizerState,
        measurement: PauliOperator,
        label: Label,
    ) -> Result<Self, StabilizerError> {
        if measurement.num_qubits() != state.num_qubits() {
            return Err(StabilizerError::DimensionMismatch {
                expected: state.num_qubits(),
                found: measurement.num_qubits(),
            });
        }
        if measurement.is_identity() {
            return Err(StabilizerError::IdentityMeasurement);
        }
        Ok(Self {
            state,
            measurement,
            label,
        })
    }

    /// The sample a hidden circuit `c` would produce for `(state, P)`.
    pub fn generate(
        c: &CliffordTableau,
        state: StabilizerState,
        measurement: PauliOperator,
    ) -> Result<Self, StabilizerError> {
        let label = c.apply_to_state(&state)?.measure(&measurement)?;
        Self::new(state, measurement, label)
    }

    pub fn state(&self) -> &StabilizerState {
        &self.state
    }

    pub fn measurement(&self) -> &PauliOperator {
        &self.measurement
    }

    pub fn label(&self) -> Label {
        self.label
    }

    pub fn num_qubits(&self) -> usize {
        self.state.num_qubits()
    }

    pub fn with_label(&self, label: Label) -> Self {
        Self {
            label,
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SampleSet {
    n: usize,
    samples: Vec<LabeledSample>,
}

impl SampleSet {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            samples: Vec::new(),
        }
    }

    pub fn from_samples(n: usize, samples: Vec<LabeledSample>) -> Result<Self, StabilizerError> {
        let mut set = Self::new(n);
        for s in samples {
            set.push(s)?;
        }
        Ok(set)
    }

    pub fn push(&mut self, sample: LabeledSample) -> Result<(), StabilizerError> {
        if sample.num_qubits() != self.n {
            return Err(StabilizerError::DimensionMismatch {
                expected: self.n,
                found: sample.num_qubits(),
            });
        }
        self.samples.push(sample);
        Ok(())
    }

    pub fn extend(&mut self, other: SampleSet) -> Result<(), StabilizerError> {
        for s in other.samples {
            self.push(s)?;
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[LabeledSample] {
        &self.samples
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LabeledSample> {
        self.samples.iter()
    }

    /// First-occurrence order is kept.
    pub fn dedup(&self) -> Self {
        let mut seen = std::collections::HashSet::new();
        Self {
            n: self.n,
            samples: self
                .samples
                .iter()
                .filter(|s| seen.insert((*s).clone()))
                .cloned()
                .collect(),
        }
    }
}

impl<'a> IntoIterator for &'a SampleSet {
    type Item = &'a LabeledSample;
    type IntoIter = std::slice::Iter<'a, LabeledSample>;

    fn into_iter(self) -> Self::IntoIter {
        self.samples.iter()
    }
}
