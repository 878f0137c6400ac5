//! Word-packed Paulis and stabilizer groups for the exhaustive search.

use crate::pauli::PauliOperator;
use crate::stabilizer::{Label, StabilizerGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct SmallPauli {
    pub x: u64,
    pub z: u64,
    pub negative: bool,
}

impl SmallPauli {
    pub fn from_op(p: &PauliOperator) -> Self {
        Self {
            x: p.x_bits().to_u64(),
            z: p.z_bits().to_u64(),
            negative: p.is_negative(),
        }
    }
}

/// Echelon form of a stabilizer group with pivots over `x ‖ z`.
#[derive(Clone, Debug)]
pub(crate) struct SmallGroup {
    n: usize,
    rows: Vec<(usize, SmallPauli)>,
}

impl SmallGroup {
    pub fn new(g: &StabilizerGroup) -> Self {
        Self {
            n: g.num_qubits(),
            rows: g
                .reduced_rows()
                .iter()
                .map(|(pivot, p)| (*pivot, SmallPauli::from_op(p)))
                .collect(),
        }
    }

    pub fn measure(&self, p: SmallPauli) -> Label {
        let (mut x, mut z) = (p.x, p.z);
        let mut phase = 2 * u32::from(p.negative);
        for (pivot, r) in &self.rows {
            let hit = if *pivot < self.n {
                x >> pivot & 1
            } else {
                z >> (pivot - self.n) & 1
            };
            if hit == 0 {
                continue;
            }
            let self_y = (x & z).count_ones();
            let rhs_y = (r.x & r.z).count_ones();
            let swap = (z & r.x).count_ones() & 1;
            x ^= r.x;
            z ^= r.z;
            let out_y = (x & z).count_ones();
            phase = (phase + 2 * u32::from(r.negative) + self_y + rhs_y + 2 * swap + 3 * out_y) & 3;
        }
        match (x | z, phase) {
            (0, 0) => Label::One,
            (0, _) => Label::Zero,
            _ => Label::Half,
        }
    }
}

/// Inverse of an `n × n` matrix given by row bitmasks, or `None` if singular.
pub(crate) fn invert_rows(rows: &[u64]) -> Option<Vec<u64>> {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut inv: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r] >> c & 1 == 1)?;
        a.swap(c, p);
        inv.swap(c, p);
        for r in 0..n {
            if r != c && a[r] >> c & 1 == 1 {
                a[r] ^= a[c];
                inv[r] ^= inv[c];
            }
        }
    }
    Some(inv)
}

/// `C† P C` for the CNOT circuit with pullback columns `cols` (bit `i` of
/// `cols[j]` is `M_ij`), signs `signs`, and `theta_t` the rows of `Θᵀ`.
pub(crate) fn pull_back(p: SmallPauli, cols: &[u64], signs: u64, theta_t: Option<&[u64]>) -> SmallPauli {
    let mut z = 0;
    let mut bits = p.z;
    while bits != 0 {
        z ^= cols[bits.trailing_zeros() as usize];
        bits &= bits - 1;
    }
    let mut negative = p.negative ^ ((signs & p.z).count_ones() & 1 == 1);
    let x = match theta_t {
        Some(rows) if p.x != 0 => rows
            .iter()
            .enumerate()
            .fold(0, |acc, (k, r)| acc | u64::from((r & p.x).count_ones() & 1) << k),
        _ => 0,
    };
    if p.x != 0 {
        let before = (p.x & p.z).count_ones() as i64;
        let after = (x & z).count_ones() as i64;
        negative ^= (before - after).rem_euclid(4) == 2;
    }
    SmallPauli { x, z, negative }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::StabilizerState;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn packed_measurement_matches_group() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let state = StabilizerState::random(3, 20, &mut rng);
            let g = SmallGroup::new(state.group());
            let p = PauliOperator::random(3, &mut rng);
            if p.is_identity() {
                continue;
            }
            assert_eq!(g.measure(SmallPauli::from_op(&p)), state.measure(&p).unwrap());
        }
    }

    #[test]
    fn inversion() {
        assert_eq!(invert_rows(&[0b11, 0b10]), Some(vec![0b11, 0b10]));
        assert_eq!(invert_rows(&[0b11, 0b11]), None);
    }
}
