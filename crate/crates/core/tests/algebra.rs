use std::collections::HashSet;

use cnotpac::circuit::random_clifford_gates;
use cnotpac::dense::{dense_conjugate, dense_expectation_oracle};
use cnotpac::f2::{complete_to_basis, general_linear_group, intersect_affine};
use cnotpac::tableau::is_symplectic;
use cnotpac::{
    AffineSubspace, BitMatrix, BitVector, CliffordTableau, CnotCircuit, Direction, Gate, Label, PauliOperator,
    StabilizerState,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn matrix(n: usize, m: usize) -> impl Strategy<Value = BitMatrix> {
    proptest::collection::vec(any::<bool>(), n * m).prop_map(move |bits| {
        let rows = bits.chunks(m).map(|r| BitVector::from_bools(r.iter().copied())).collect();
        BitMatrix::from_rows(m, rows).unwrap()
    })
}

fn square() -> impl Strategy<Value = BitMatrix> {
    (1usize..=5).prop_flat_map(|n| matrix(n, n))
}

/// Leibniz expansion: the parity of permutations whose entries are all 1.
fn leibniz(m: &BitMatrix) -> bool {
    fn go(m: &BitMatrix, row: usize, used: &mut Vec<bool>) -> bool {
        if row == m.rows() {
            return true;
        }
        let mut acc = false;
        for c in 0..m.cols() {
            if !used[c] && m.get(row, c) {
                used[c] = true;
                acc ^= go(m, row + 1, used);
                used[c] = false;
            }
        }
        acc
    }
    go(m, 0, &mut vec![false; m.cols()])
}

/// `log₂` of the number of distinct vectors in the row span.
fn span_rank(m: &BitMatrix) -> usize {
    let mut seen = HashSet::new();
    for mask in 0..1u64 << m.rows() {
        let mut v = BitVector::zeros(m.cols());
        for r in 0..m.rows() {
            if mask >> r & 1 == 1 {
                v ^= m.row(r);
            }
        }
        seen.insert(v);
    }
    seen.len().trailing_zeros() as usize
}

proptest! {
    #[test]
    fn determinant_matches_leibniz(m in square()) {
        prop_assert_eq!(m.determinant().unwrap(), leibniz(&m));
    }

    #[test]
    fn rank_matches_span_size(m in (1usize..=5, 1usize..=6).prop_flat_map(|(r, c)| matrix(r, c))) {
        prop_assert_eq!(m.rank(), span_rank(&m));
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn inverse_and_products(a in (1usize..=5).prop_flat_map(|n| (matrix(n, n), matrix(n, n)))) {
        let (a, b) = a;
        let n = a.rows();
        let ab = a.try_mul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), a.determinant().unwrap() & b.determinant().unwrap());
        prop_assert_eq!(ab.transpose(), b.transpose().try_mul(&a.transpose()).unwrap());
        match a.invert() {
            Ok(inv) => {
                prop_assert!(a.try_mul(&inv).unwrap().is_identity());
                prop_assert!(inv.try_mul(&a).unwrap().is_identity());
            }
            Err(_) => prop_assert!(a.rank() < n),
        }
    }

    #[test]
    fn affine_intersection_matches_enumeration(
        seed in any::<u64>(),
        dim in 1usize..=5,
        ka in 0usize..4,
        kb in 0usize..4,
    ) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut space = |k: usize| {
            let dirs: Vec<BitVector> = (0..k).map(|_| BitVector::random(dim, &mut rng)).collect();
            AffineSubspace::new(BitVector::random(dim, &mut rng), &dirs).unwrap()
        };
        let (a, b) = (space(ka), space(kb));
        let common: HashSet<BitVector> = a.points().filter(|p| b.contains(p)).collect();
        match intersect_affine(&a, &b).unwrap() {
            None => prop_assert!(common.is_empty()),
            Some(i) => {
                let got: HashSet<BitVector> = i.points().collect();
                prop_assert_eq!(got, common);
            }
        }
    }

    #[test]
    fn basis_completion(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = StdRng::seed_from_u64(seed);
        let v = loop {
            let v = BitVector::random(n, &mut rng);
            if !v.is_zero() {
                break v;
            }
        };
        let done = complete_to_basis(&[v.clone()], n, &mut rng).unwrap();
        prop_assert_eq!(&done.vectors[0], &v);
        prop_assert_eq!(BitMatrix::from_rows(n, done.vectors).unwrap().rank(), n);
        prop_assert!(done.draws >= n - 1);
    }

    #[test]
    fn tableau_composition_is_gate_concatenation(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g1 = random_clifford_gates(n, 12, &mut rng);
        let g2 = random_clifford_gates(n, 12, &mut rng);
        let both: Vec<Gate> = g1.iter().chain(&g2).copied().collect();
        let t1 = CliffordTableau::from_gates(n, &g1).unwrap();
        let t2 = CliffordTableau::from_gates(n, &g2).unwrap();
        prop_assert_eq!(t1.then(&t2).unwrap(), CliffordTableau::from_gates(n, &both).unwrap());
        prop_assert_eq!(t1.then(&t1.inverse()).unwrap(), CliffordTableau::identity(n));
    }

    #[test]
    fn conjugation_matches_dense(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let gates = random_clifford_gates(n, 10, &mut rng);
        let t = CliffordTableau::from_gates(n, &gates).unwrap();
        let p = PauliOperator::random(n, &mut rng);
        let dense = dense_conjugate(n, &gates, &p).unwrap().unwrap();
        prop_assert_eq!(t.conjugate(&p, Direction::Forward).unwrap(), dense.clone());
        prop_assert_eq!(t.conjugate(&dense, Direction::Inverse).unwrap(), p);
    }

    #[test]
    fn products_of_generators_stabilize(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let state = StabilizerState::random(n, 30, &mut rng);
        let g = state.generators();
        let prod = g[0].try_mul(&g[n - 1]).unwrap();
        prop_assert_eq!(state.measure(&prod).unwrap(), Label::One);
        prop_assert_eq!(state.measure(&prod.negated()).unwrap(), Label::Zero);
    }
}

#[test]
fn general_linear_group_sizes() {
    for (n, size) in [(1, 1), (2, 6), (3, 168), (4, 20160)] {
        let all = general_linear_group(n);
        assert_eq!(all.len(), size);
        assert!(all[0].is_identity());
        assert!(all.iter().all(|m| m.determinant().unwrap()));
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), size);
    }
}

fn all_signed_paulis(n: usize) -> Vec<PauliOperator> {
    let mut out = Vec::new();
    for x in 0..1u64 << n {
        for z in 0..1u64 << n {
            if x == 0 && z == 0 {
                continue;
            }
            for neg in [false, true] {
                out.push(PauliOperator::new(neg, BitVector::from_u64(n, x), BitVector::from_u64(n, z)).unwrap());
            }
        }
    }
    out
}

#[test]
fn trichotomy_against_dense_oracle() {
    let mut rng = StdRng::seed_from_u64(3);
    let n = 3;
    let mut suite = vec![StabilizerState::zero(n)];
    suite.extend((0..49).map(|_| StabilizerState::random(n, 40, &mut rng)));
    let paulis = all_signed_paulis(n);
    assert_eq!(paulis.len(), 126);
    for state in &suite {
        for p in &paulis {
            let label = state.measure(p).unwrap();
            let dense = dense_expectation_oracle(state, p).unwrap();
            assert_eq!(dense, label.value(), "{p} on {:?}", state.generators());
        }
    }
}

#[test]
fn synthesis_covers_gl3() {
    let n = 3;
    for theta in general_linear_group(n) {
        for q in 0..8 {
            let q = BitVector::from_u64(n, q);
            let c = CnotCircuit::synthesize(&theta, &q).unwrap();
            assert!(c.gates().iter().all(|g| matches!(g, Gate::Cnot { .. } | Gate::X(_))));
            let t = CliffordTableau::from_gates(n, c.gates()).unwrap();
            assert_eq!(t.theta(), theta);
            assert_eq!(t.q(), q);
            assert!(t.gamma().is_zero());
            assert!(t.beta().is_zero());
            assert!(t.p().is_zero());
            assert_eq!(t.alpha(), theta.invert().unwrap().transpose());
            assert_eq!(CnotCircuit::try_from_tableau(&t).unwrap().theta(), &theta);
        }
    }
}

#[test]
fn symplectic_fuzzing() {
    let mut rng = StdRng::seed_from_u64(12);
    let mut applied = 0;
    while applied < 10_000 {
        for n in 1..=6 {
            let mut t = CliffordTableau::identity(n);
            for g in random_clifford_gates(n, 300, &mut rng) {
                t.apply_gate_mut(&g).unwrap();
                assert!(is_symplectic(&t.matrix(), n));
                applied += 1;
            }
        }
    }
}
