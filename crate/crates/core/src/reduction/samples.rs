use rand::Rng;

use crate::f2::{complete_to_basis, BitMatrix, BitVector};
use crate::pauli::PauliOperator;
use crate::sample::{LabeledSample, SampleSet};
use crate::stabilizer::{Label, StabilizerState};

use super::ReductionError;

fn precondition(msg: impl Into<String>) -> ReductionError {
    ReductionError::Precondition(msg.into())
}

/// Samples forcing `C† P C ∈ {Z^v, Z^{v+w}}` (positive sign), or
/// `C† P C = Z^v` when `w` is `None`.
///
/// With a basis `(b_1 = v, b_2, …, b_n)` (and `b_2 = w` in the
/// one-dimensional case), every sample uses the state
/// `ρ(±Z^{b_1}, …, ±Z^{b_n})`. The all-positive state with label 1 forces
/// `C† P C = +Z^u` for some `u = Σ c_i b_i`; flipping the sign of `b_i`
/// with label 1 forces `c_i = 0`; flipping `b_1` with label 0 forces
/// `c_1 = 1`. The one-dimensional case leaves `c_2` free and uses `n`
/// samples, the zero-dimensional case pins it too and uses `n + 1`.
pub fn constrain_pauli_samples<R: Rng + ?Sized>(
    n: usize,
    target: &PauliOperator,
    v: &BitVector,
    w: Option<&BitVector>,
    rng: &mut R,
) -> Result<SampleSet, ReductionError> {
    if target.num_qubits() != n || target.is_identity() {
        return Err(precondition("target must be a non-identity Pauli on n qubits"));
    }
    if v.len() != n || v.is_zero() {
        return Err(precondition("v must be a nonzero vector of length n"));
    }
    let mut fixed = vec![v.clone()];
    if let Some(w) = w {
        if w.len() != n || w.is_zero() || w == v {
            return Err(precondition("w must be nonzero, of length n, and differ from v"));
        }
        fixed.push(w.clone());
    }
    let basis = complete_to_basis(&fixed, n, rng)?.vectors;
    let free = fixed.len();
    let state = |flip: Option<usize>| {
        let signs = BitVector::from_bools((0..n).map(|i| Some(i) == flip));
        StabilizerState::from_z_basis(&basis, &signs).expect("a basis gives a valid state")
    };
    let sample = |flip: Option<usize>, label: Label| {
        LabeledSample::new(state(flip), target.clone(), label).expect("dimensions checked")
    };
    let mut out = SampleSet::new(n);
    out.push(sample(None, Label::One))?;
    for i in free..n {
        out.push(sample(Some(i), Label::One))?;
    }
    out.push(sample(Some(0), Label::Zero))?;
    Ok(out)
}

/// A computational basis vector `y` with `y·a = y·b = 1`, for nonzero `a`,
/// `b`. Deterministic: a unit vector when one works, otherwise a sum of
/// two.
fn separating_vector(a: &BitVector, b: &BitVector) -> BitVector {
    let n = a.len();
    let i = a.first_one().expect("a is nonzero");
    if b.get(i) {
        return BitVector::unit(n, i);
    }
    let j = b.first_one().expect("b is nonzero");
    if a.get(j) {
        return BitVector::unit(n, j);
    }
    &BitVector::unit(n, i) ^ &BitVector::unit(n, j)
}

/// Samples forcing the pullback columns `M e_{c_1}, …, M e_{c_k}` to equal
/// `V + α W` jointly, for a single `α ∈ {0, 1}`, with positive signs.
///
/// Each column gets its own one-dimensional constraint (`n` samples), which
/// leaves a free bit `α_j` per column. Consecutive columns are tied with one
/// extra sample: measuring `Z_{c_{j-1}} Z_{c_j}` on `|y⟩` with
/// `y·w_{j-1} = y·w_j = 1` gives label 1 exactly when
/// `y·(v_{j-1} + v_j) + α_{j-1} + α_j = 0`. Total `kn + k − 1`.
pub fn constrain_submatrix_samples<R: Rng + ?Sized>(
    n: usize,
    columns: &[usize],
    v: &BitMatrix,
    w: &BitMatrix,
    rng: &mut R,
) -> Result<SampleSet, ReductionError> {
    let k = columns.len();
    if k == 0 {
        return Err(precondition("at least one column is required"));
    }
    if v.rows() != n || w.rows() != n || v.cols() != k || w.cols() != k {
        return Err(precondition("V and W must be n x k"));
    }
    let mut seen = std::collections::BTreeSet::new();
    if columns.iter().any(|&c| c >= n || !seen.insert(c)) {
        return Err(precondition("columns must be distinct indices below n"));
    }
    let mut out = SampleSet::new(n);
    for j in 0..k {
        let (vj, wj) = (v.column(j), w.column(j));
        let target = PauliOperator::z_on(n, columns[j]);
        out.extend(constrain_pauli_samples(n, &target, &vj, Some(&wj), rng)?)?;
        if j > 0 {
            let (vp, wp) = (v.column(j - 1), w.column(j - 1));
            let y = separating_vector(&wp, &wj);
            let pair = PauliOperator::z_power(
                &(&BitVector::unit(n, columns[j - 1]) ^ &BitVector::unit(n, columns[j])),
            );
            let label = Label::from_bit(!y.dot(&(&vp ^ &vj)));
            out.push(LabeledSample::new(StabilizerState::basis(&y), pair, label)?)?;
        }
    }
    Ok(out)
}
