//! 3SAT → arithmetic formula → weighted digraph → NonSingularity family →
//! CNOT sample set.
//!
//! The final step pins the pullback map `b ↦ C† Z^b C` of any consistent
//! CNOT circuit: its matrix `M = Θ^{-1}` must lie in the instance's family
//! `M_0 + Span{M_i}` and all its signs must be positive. A consistent
//! circuit therefore exists iff some `M(a)` is invertible.

mod cnf;
mod formula;
mod graph;
mod instance;
mod samples;

pub use cnf::{CnfFormula, Literal};
pub use formula::{arithmetize_cnf, eval_formula, ArithFormula};
pub use graph::{formula_to_graph, formula_to_graph_with, Edge, VertexOrder, Weight, WeightedDigraph};
pub use instance::{affine_family_search, graph_to_instance, NonSingularityInstance, MAX_AFFINE_VARS};
pub use samples::{constrain_pauli_samples, constrain_submatrix_samples};

use rand::Rng;
use thiserror::Error;

use crate::f2::F2Error;
use crate::pauli::PauliOperator;
use crate::sample::SampleSet;
use crate::stabilizer::StabilizerError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("invalid CNF: {0}")]
    InvalidCnf(String),
    #[error("formula syntax error at position {position}: {message}")]
    FormulaSyntax { position: usize, message: String },
    #[error("assignment does not cover variable x{0}")]
    MissingVariable(usize),
    #[error("instance matrices must be {size}x{size}, found {rows}x{cols}")]
    InstanceShape {
        size: usize,
        rows: usize,
        cols: usize,
    },
    #[error("instance does not satisfy the simplified NonSingularity conditions")]
    NotSimplified,
    #[error("{k} variables exceed the exhaustive search limit of {max}")]
    TooManyVariables { k: usize, max: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    F2(#[from] F2Error),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
}

/// Output of the reduction: the sample set and the instance it encodes.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub formula: ArithFormula,
    pub instance: NonSingularityInstance,
    pub samples: SampleSet,
}

/// Samples whose consistent CNOT circuits are exactly those with pullback
/// matrix in `M_0 + Span{M_i}` and all pullback signs zero.
///
/// Each `M_i` gets a joint constraint on its columns; every remaining
/// column is pinned to its `M_0` value. The count is
/// `n(n+1) − #{i : M_i ≠ 0} ≤ n(n+1)`.
pub fn reduce_instance_to_samples<R: Rng + ?Sized>(
    inst: &NonSingularityInstance,
    rng: &mut R,
) -> Result<SampleSet, ReductionError> {
    if !inst.validate_simplified() {
        return Err(ReductionError::NotSimplified);
    }
    let n = inst.size();
    let mut out = SampleSet::new(n);
    for m in inst.ms() {
        let columns = m.nonzero_columns();
        if columns.is_empty() {
            continue;
        }
        let v = inst.m0().select_columns(&columns);
        let w = m.select_columns(&columns);
        out.extend(constrain_submatrix_samples(n, &columns, &v, &w, rng)?)?;
    }
    for c in inst.untouched_columns() {
        let target = PauliOperator::z_on(n, c);
        out.extend(constrain_pauli_samples(n, &target, &inst.m0().column(c), None, rng)?)?;
    }
    Ok(out)
}

pub fn reduce_formula_to_samples<R: Rng + ?Sized>(
    f: &ArithFormula,
    order: VertexOrder,
    rng: &mut R,
) -> Result<Reduction, ReductionError> {
    let instance = graph_to_instance(&formula_to_graph_with(f, order));
    let samples = reduce_instance_to_samples(&instance, rng)?;
    Ok(Reduction {
        formula: f.clone(),
        instance,
        samples,
    })
}

/// The whole chain from a CNF. A CNOT circuit consistent with the returned
/// samples exists iff the CNF is satisfiable.
pub fn reduce_sat_to_samples<R: Rng + ?Sized>(
    f: &CnfFormula,
    rng: &mut R,
) -> Result<Reduction, ReductionError> {
    reduce_formula_to_samples(&arithmetize_cnf(f), VertexOrder::Construction, rng)
}
