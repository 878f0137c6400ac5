//! JSON file formats. Bit vectors are strings of `0`/`1` with coordinate 0
//! first; matrices are lists of such rows; labels are `"0"`, `"1/2"` or
//! `"1"` so that ½ survives a round trip exactly.

use cnotpac::reduction::NonSingularityInstance;
use cnotpac::{
    BitMatrix, BitVector, CliffordTableau, Gate, Label, LabeledSample, PauliOperator, SampleSet, StabilizerState,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn invalid(msg: impl Into<String>) -> SchemaError {
    SchemaError::Invalid(msg.into())
}

fn bits(s: &str, len: usize, what: &str) -> Result<BitVector, SchemaError> {
    let v: BitVector = s.parse().map_err(|e| invalid(format!("{what}: {e}")))?;
    if v.len() != len {
        return Err(invalid(format!("{what}: expected {len} bits, found {}", v.len())));
    }
    Ok(v)
}

fn matrix_rows(m: &BitMatrix) -> Vec<String> {
    (0..m.rows()).map(|r| m.row(r).to_string()).collect()
}

fn matrix(rows: &[String], size: usize, what: &str) -> Result<BitMatrix, SchemaError> {
    if rows.len() != size {
        return Err(invalid(format!("{what}: expected {size} rows, found {}", rows.len())));
    }
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| bits(r, size, &format!("{what} row {i}")))
        .collect::<Result<_, _>>()?;
    BitMatrix::from_rows(size, rows).map_err(|e| invalid(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PauliJson {
    pub n: usize,
    pub sign: i8,
    pub x: String,
    pub z: String,
}

impl From<&PauliOperator> for PauliJson {
    fn from(p: &PauliOperator) -> Self {
        Self {
            n: p.num_qubits(),
            sign: if p.is_negative() { -1 } else { 1 },
            x: p.x_bits().to_string(),
            z: p.z_bits().to_string(),
        }
    }
}

impl TryFrom<&PauliJson> for PauliOperator {
    type Error = SchemaError;

    fn try_from(j: &PauliJson) -> Result<Self, SchemaError> {
        let negative = match j.sign {
            1 => false,
            -1 => true,
            s => return Err(invalid(format!("pauli sign must be 1 or -1, found {s}"))),
        };
        let x = bits(&j.x, j.n, "pauli x")?;
        let z = bits(&j.z, j.n, "pauli z")?;
        PauliOperator::new(negative, x, z).map_err(|e| invalid(e.to_string()))
    }
}

pub fn label_str(l: Label) -> String {
    l.to_string()
}

pub fn parse_label(s: &str) -> Result<Label, SchemaError> {
    match s {
        "0" => Ok(Label::Zero),
        "1/2" => Ok(Label::Half),
        "1" => Ok(Label::One),
        other => Err(invalid(format!("label must be \"0\", \"1/2\" or \"1\", found {other:?}"))),
    }
}

fn state_json(s: &StabilizerState) -> Vec<PauliJson> {
    s.generators().iter().map(PauliJson::from).collect()
}

fn parse_state(gens: &[PauliJson]) -> Result<StabilizerState, SchemaError> {
    let gens = gens.iter().map(PauliOperator::try_from).collect::<Result<Vec<_>, _>>()?;
    StabilizerState::new(gens).map_err(|e| invalid(format!("state: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleJson {
    pub state: Vec<PauliJson>,
    pub measurement: PauliJson,
    pub label: String,
}

impl From<&LabeledSample> for SampleJson {
    fn from(s: &LabeledSample) -> Self {
        Self {
            state: state_json(s.state()),
            measurement: s.measurement().into(),
            label: label_str(s.label()),
        }
    }
}

impl TryFrom<&SampleJson> for LabeledSample {
    type Error = SchemaError;

    fn try_from(j: &SampleJson) -> Result<Self, SchemaError> {
        let state = parse_state(&j.state)?;
        let measurement = PauliOperator::try_from(&j.measurement)?;
        LabeledSample::new(state, measurement, parse_label(&j.label)?).map_err(|e| invalid(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSetJson {
    pub n: usize,
    pub samples: Vec<SampleJson>,
}

impl From<&SampleSet> for SampleSetJson {
    fn from(s: &SampleSet) -> Self {
        Self {
            n: s.num_qubits(),
            samples: s.iter().map(SampleJson::from).collect(),
        }
    }
}

impl TryFrom<&SampleSetJson> for SampleSet {
    type Error = SchemaError;

    fn try_from(j: &SampleSetJson) -> Result<Self, SchemaError> {
        let samples = j
            .samples
            .iter()
            .enumerate()
            .map(|(i, s)| LabeledSample::try_from(s).map_err(|e| invalid(format!("sample {i}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        SampleSet::from_samples(j.n, samples).map_err(|e| invalid(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "lowercase")]
pub enum GateJson {
    Cnot { control: usize, target: usize },
    X { qubit: usize },
    Z { qubit: usize },
    H { qubit: usize },
    P { qubit: usize },
}

impl From<&Gate> for GateJson {
    fn from(g: &Gate) -> Self {
        match *g {
            Gate::Cnot { control, target } => GateJson::Cnot { control, target },
            Gate::X(qubit) => GateJson::X { qubit },
            Gate::Z(qubit) => GateJson::Z { qubit },
            Gate::H(qubit) => GateJson::H { qubit },
            Gate::P(qubit) => GateJson::P { qubit },
        }
    }
}

impl From<&GateJson> for Gate {
    fn from(g: &GateJson) -> Self {
        match *g {
            GateJson::Cnot { control, target } => Gate::Cnot { control, target },
            GateJson::X { qubit } => Gate::X(qubit),
            GateJson::Z { qubit } => Gate::Z(qubit),
            GateJson::H { qubit } => Gate::H(qubit),
            GateJson::P { qubit } => Gate::P(qubit),
        }
    }
}

/// The `2n × 2n` matrix `S` and the `2n` phase bits `(p_0, q_0, p_1, …)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauJson {
    pub matrix: Vec<String>,
    pub phases: String,
}

impl From<&CliffordTableau> for TableauJson {
    fn from(t: &CliffordTableau) -> Self {
        Self {
            matrix: matrix_rows(&t.matrix()),
            phases: t.phases().to_string(),
        }
    }
}

impl TableauJson {
    pub fn parse(&self, n: usize) -> Result<CliffordTableau, SchemaError> {
        let s = matrix(&self.matrix, 2 * n, "tableau matrix")?;
        let phases = bits(&self.phases, 2 * n, "tableau phases")?;
        CliffordTableau::from_parts(&s, &phases)
            .map_err(|e| invalid(format!("tableau fails the symplectic condition S^T Λ S = Λ: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitJson {
    pub n: usize,
    pub gates: Vec<GateJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tableau: Option<TableauJson>,
}

impl CircuitJson {
    pub fn new(n: usize, gates: &[Gate], with_tableau: bool) -> Self {
        let tableau = with_tableau.then(|| {
            TableauJson::from(&CliffordTableau::from_gates(n, gates).expect("gates were validated upstream"))
        });
        Self {
            n,
            gates: gates.iter().map(GateJson::from).collect(),
            tableau,
        }
    }

    pub fn gates(&self) -> Vec<Gate> {
        self.gates.iter().map(Gate::from).collect()
    }

    /// The hypothesis: the tableau block if present (it must agree with
    /// the gates when both are given), otherwise the gates' tableau.
    pub fn tableau(&self) -> Result<CliffordTableau, SchemaError> {
        let from_gates = CliffordTableau::from_gates(self.n, &self.gates()).map_err(|e| invalid(e.to_string()))?;
        match &self.tableau {
            None => Ok(from_gates),
            Some(t) => {
                let t = t.parse(self.n)?;
                if !self.gates.is_empty() && t != from_gates {
                    return Err(invalid("tableau block disagrees with the gate list"));
                }
                Ok(t)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub size: usize,
    pub m0: Vec<String>,
    pub ms: Vec<Vec<String>>,
}

impl From<&NonSingularityInstance> for InstanceJson {
    fn from(inst: &NonSingularityInstance) -> Self {
        Self {
            size: inst.size(),
            m0: matrix_rows(inst.m0()),
            ms: inst.ms().iter().map(matrix_rows).collect(),
        }
    }
}

impl TryFrom<&InstanceJson> for NonSingularityInstance {
    type Error = SchemaError;

    fn try_from(j: &InstanceJson) -> Result<Self, SchemaError> {
        let m0 = matrix(&j.m0, j.size, "m0")?;
        let ms = j
            .ms
            .iter()
            .enumerate()
            .map(|(i, m)| matrix(m, j.size, &format!("ms[{i}]")))
            .collect::<Result<_, _>>()?;
        NonSingularityInstance::new(m0, ms).map_err(|e| invalid(e.to_string()))
    }
}

/// Symbolic rows of `M(x)`: `0`, `1`, `x<i>`, or a sum such as `1+x2`.
pub fn symbolic_rows(inst: &NonSingularityInstance) -> Vec<String> {
    let n = inst.size();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut terms: Vec<String> = Vec::new();
                    if inst.m0().get(i, j) {
                        terms.push("1".into());
                    }
                    for (k, m) in inst.ms().iter().enumerate() {
                        if m.get(i, j) {
                            terms.push(format!("x{}", k + 1));
                        }
                    }
                    if terms.is_empty() {
                        "0".into()
                    } else {
                        terms.join("+")
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

/// Output of `reduce`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionJson {
    pub formula: String,
    pub matrix: Vec<String>,
    pub instance: InstanceJson,
    pub samples: SampleSetJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSampleJson {
    pub state: Vec<PauliJson>,
    pub label: String,
}

/// Input of `learn --mode single-measurement`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchJson {
    pub measurement: PauliJson,
    pub samples: Vec<BatchSampleJson>,
}

impl BatchJson {
    pub fn parse(&self) -> Result<cnotpac::learners::SingleMeasurementBatch, SchemaError> {
        let p = PauliOperator::try_from(&self.measurement)?;
        let samples = self
            .samples
            .iter()
            .map(|s| Ok((parse_state(&s.state)?, parse_label(&s.label)?)))
            .collect::<Result<Vec<_>, SchemaError>>()?;
        cnotpac::learners::SingleMeasurementBatch::new(p, samples).map_err(|e| invalid(e.to_string()))
    }
}

impl From<&cnotpac::learners::SingleMeasurementBatch> for BatchJson {
    fn from(b: &cnotpac::learners::SingleMeasurementBatch) -> Self {
        Self {
            measurement: b.measurement().into(),
            samples: b
                .samples()
                .iter()
                .map(|(s, l)| BatchSampleJson {
                    state: state_json(s),
                    label: label_str(*l),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedSampleJson {
    pub weight: f64,
    #[serde(flatten)]
    pub sample: SampleJson,
}

/// Input of `learn --mode pac`: a finite distribution over samples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistributionJson {
    pub n: usize,
    pub samples: Vec<WeightedSampleJson>,
}

impl DistributionJson {
    pub fn parse(&self) -> Result<(SampleSet, Vec<f64>), SchemaError> {
        let set = SampleSetJson {
            n: self.n,
            samples: self.samples.iter().map(|w| w.sample.clone()).collect(),
        };
        let weights: Vec<f64> = self.samples.iter().map(|w| w.weight).collect();
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) || !weights.iter().any(|w| *w > 0.0) {
            return Err(invalid("weights must be finite, non-negative and not all zero"));
        }
        Ok((SampleSet::try_from(&set)?, weights))
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("schema types serialize");
    s.push('\n');
    s
}
