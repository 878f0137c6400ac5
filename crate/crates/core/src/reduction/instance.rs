use std::collections::BTreeSet;

use crate::f2::{BitMatrix, BitVector};

use super::graph::{Weight, WeightedDigraph};
use super::ReductionError;

/// The affine matrix family `M(a) = M_0 + Σ a_i M_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonSingularityInstance {
    m0: BitMatrix,
    ms: Vec<BitMatrix>,
}

impl NonSingularityInstance {
    pub fn new(m0: BitMatrix, ms: Vec<BitMatrix>) -> Result<Self, ReductionError> {
        let size = m0.rows();
        for m in std::iter::once(&m0).chain(&ms) {
            if m.rows() != size || m.cols() != size {
                return Err(ReductionError::InstanceShape {
                    size,
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
        }
        Ok(Self { m0, ms })
    }

    pub fn size(&self) -> usize {
        self.m0.rows()
    }

    pub fn m0(&self) -> &BitMatrix {
        &self.m0
    }

    pub fn ms(&self) -> &[BitMatrix] {
        &self.ms
    }

    pub fn num_vars(&self) -> usize {
        self.ms.len()
    }

    /// `M(a)`; bit `i` of the assignment is the coefficient of `M_{i+1}`.
    pub fn evaluate(&self, assignment: &BitVector) -> Result<BitMatrix, ReductionError> {
        if assignment.len() != self.ms.len() {
            return Err(ReductionError::MissingVariable(assignment.len() + 1));
        }
        let mut m = self.m0.clone();
        for i in assignment.ones() {
            m = &m + &self.ms[i];
        }
        Ok(m)
    }

    /// Nonzero columns of `M_{var}` (1-based variable).
    pub fn variable_columns(&self, var: usize) -> Vec<usize> {
        self.ms[var - 1].nonzero_columns()
    }

    /// Columns on which every `M_i` vanishes.
    pub fn untouched_columns(&self) -> Vec<usize> {
        let touched: BTreeSet<usize> = self.ms.iter().flat_map(|m| m.nonzero_columns()).collect();
        (0..self.size()).filter(|c| !touched.contains(c)).collect()
    }

    /// Structural conditions of the simplified problem: the `M_i` live on
    /// disjoint columns, and on each such column the offset `v` and
    /// direction `w` are nonzero and distinct. Columns untouched by every
    /// `M_i` must have a nonzero offset so they can be pinned.
    pub fn validate_simplified(&self) -> bool {
        let mut seen = BTreeSet::new();
        for m in &self.ms {
            for c in m.nonzero_columns() {
                if !seen.insert(c) {
                    return false;
                }
                let v = self.m0.column(c);
                if v.is_zero() || v == m.column(c) {
                    return false;
                }
            }
        }
        self.untouched_columns()
            .iter()
            .all(|&c| !self.m0.column(c).is_zero())
    }
}

/// Adjacency family of a closed graph: `M(x)_{ij}` is the weight of the
/// edge `i → j`.
pub fn graph_to_instance(g: &WeightedDigraph) -> NonSingularityInstance {
    let n = g.vertex_count();
    let mut m0 = BitMatrix::zeros(n, n);
    let mut ms = vec![BitMatrix::zeros(n, n); g.num_vars()];
    for e in g.edges() {
        let target = match e.weight {
            Weight::One => &mut m0,
            Weight::Var(i) => &mut ms[i - 1],
        };
        let old = target.get(e.from, e.to);
        target.set(e.from, e.to, !old);
    }
    NonSingularityInstance::new(m0, ms).expect("all matrices are n x n")
}

/// First assignment `a` in increasing integer order with `det M(a) = 1`.
pub fn affine_family_search(
    inst: &NonSingularityInstance,
) -> Result<Option<BitVector>, ReductionError> {
    let k = inst.num_vars();
    if k > MAX_AFFINE_VARS {
        return Err(ReductionError::TooManyVariables {
            k,
            max: MAX_AFFINE_VARS,
        });
    }
    for a in 0..1u64 << k {
        let assignment = BitVector::from_u64(k, a);
        if inst.evaluate(&assignment)?.rank() == inst.size() {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

pub const MAX_AFFINE_VARS: usize = 24;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::graph::Edge;

    #[test]
    fn toy_family() {
        let e = |from, to, weight| Edge { from, to, weight };
        let g = WeightedDigraph::from_edges(
            2,
            0,
            1,
            2,
            vec![
                e(0, 0, Weight::Var(1)),
                e(0, 1, Weight::One),
                e(1, 0, Weight::Var(2)),
                e(1, 1, Weight::Var(1)),
            ],
        );
        let inst = graph_to_instance(&g);
        assert_eq!(inst.m0(), &BitMatrix::from_strs(&["01", "00"]).unwrap());
        assert_eq!(inst.ms()[0], BitMatrix::identity(2));
        assert_eq!(inst.ms()[1], BitMatrix::from_strs(&["00", "10"]).unwrap());
        assert!(!inst.validate_simplified());
    }

    #[test]
    fn shared_column_is_rejected() {
        let m0 = BitMatrix::identity(2);
        let m1 = BitMatrix::from_strs(&["01", "00"]).unwrap();
        let ok = NonSingularityInstance::new(m0.clone(), vec![m1.clone()]).unwrap();
        assert!(ok.validate_simplified());
        let bad = NonSingularityInstance::new(m0, vec![m1.clone(), m1]).unwrap();
        assert!(!bad.validate_simplified());
    }

    #[test]
    fn zero_offset_column_is_rejected() {
        let m0 = BitMatrix::from_strs(&["10", "00"]).unwrap();
        let m1 = BitMatrix::from_strs(&["01", "00"]).unwrap();
        let inst = NonSingularityInstance::new(m0, vec![m1]).unwrap();
        assert!(!inst.validate_simplified());
    }
}
