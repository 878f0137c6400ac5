use cnotpac::consistency::{affine_family_search, brute_force_search};
use cnotpac::f2::general_linear_group;
use cnotpac::reduction::{
    arithmetize_cnf, constrain_pauli_samples, constrain_submatrix_samples, formula_to_graph,
    formula_to_graph_with, graph_to_instance, reduce_instance_to_samples, reduce_sat_to_samples, ArithFormula,
    CnfFormula, Edge, NonSingularityInstance, VertexOrder, Weight,
};
use cnotpac::{BitMatrix, BitVector, PauliOperator, SampleSet};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const WORKED_EXAMPLE: [&str; 9] = [
    "0 x1 0 0 0 x3 0 0 0",
    "0 1 1 0 0 0 0 0 0",
    "0 0 1 x2 x3 0 0 0 0",
    "0 0 0 1 0 0 0 0 1",
    "0 0 0 0 1 0 0 0 1",
    "0 0 0 0 0 1 1 0 0",
    "0 0 0 0 0 0 1 x4 0",
    "0 0 0 0 0 0 0 1 1",
    "1 0 0 0 0 0 0 0 1",
];

/// The symbolic entry of the affine family at `(i, j)`.
fn entry(inst: &NonSingularityInstance, i: usize, j: usize) -> String {
    let vars: Vec<usize> = (0..inst.num_vars()).filter(|&k| inst.ms()[k].get(i, j)).collect();
    match (inst.m0().get(i, j), vars.as_slice()) {
        (c, []) => u8::from(c).to_string(),
        (false, [k]) => format!("x{}", k + 1),
        (c, ks) => format!("{}+{ks:?}", u8::from(c)),
    }
}

#[test]
fn worked_example_matrix() {
    let f: ArithFormula = "x1*(x2+x3)+x3*x4".parse().unwrap();
    let inst = graph_to_instance(&formula_to_graph_with(&f, VertexOrder::TargetLast));
    assert_eq!(inst.size(), 9);
    for (i, row) in WORKED_EXAMPLE.iter().enumerate() {
        let got: Vec<String> = (0..9).map(|j| entry(&inst, i, j)).collect();
        assert_eq!(got.join(" "), *row, "row {i}");
    }
    assert!(inst.validate_simplified());
}

#[test]
fn worked_example_graph() {
    let f: ArithFormula = "x1*(x2+x3)+x3*x4".parse().unwrap();
    let g = formula_to_graph_with(&f, VertexOrder::TargetLast);
    assert_eq!(g.vertex_count(), 9);
    let mut expected = vec![
        (0, 1, Weight::Var(1)),
        (1, 2, Weight::One),
        (2, 3, Weight::Var(2)),
        (2, 4, Weight::Var(3)),
        (3, 8, Weight::One),
        (4, 8, Weight::One),
        (0, 5, Weight::Var(3)),
        (5, 6, Weight::One),
        (6, 7, Weight::Var(4)),
        (7, 8, Weight::One),
        (8, 0, Weight::One),
    ];
    expected.extend((1..9).map(|v| (v, v, Weight::One)));
    let mut expected: Vec<Edge> = expected
        .into_iter()
        .map(|(from, to, weight)| Edge { from, to, weight })
        .collect();
    expected.sort();
    assert_eq!(g.sorted_edges(), expected);
}

fn formula_corpus() -> Vec<ArithFormula> {
    let mut out: Vec<ArithFormula> = [
        "1",
        "0",
        "x1",
        "x1*(x2+x3)+x3*x4",
        "1+x1",
        "x1+x1",
        "x1*x1",
        "x1*x2",
        "x1+x2",
        "x1*(1+x1)",
        "1+x1*x2",
        "(x1+x2)*(x2+x3)",
        "x1*x2*x3",
        "x1+x2+x3",
        "(1+x1)*(1+x2)*(1+x3)",
        "1+(1+x1)*(1+x2)",
        "(1+(1+x1)*(1+x2))*(1+(1+x3)*x2)",
        "x1*(x2+x3*(x4+x5))",
        "(x1+x2)*(x3+x4)*(x5+x6)",
        "x6+x5*x4+x3*x2*x1",
        "0*x1+1",
        "(x1+1)*(x2+0)",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect();
    for clauses in [&[&[1i64, -2, 3][..], &[-1, 2]][..], &[&[1], &[-1]], &[&[1, 2, 3], &[-1, -2], &[2, -3]]] {
        let vars = clauses.iter().flat_map(|c| c.iter()).map(|l| l.unsigned_abs() as usize).max().unwrap();
        out.push(arithmetize_cnf(&CnfFormula::from_ints(vars, clauses).unwrap()));
    }
    out
}

#[test]
fn determinant_equals_formula() {
    let corpus = formula_corpus();
    assert!(corpus.len() >= 20);
    for f in &corpus {
        for order in [VertexOrder::Construction, VertexOrder::TargetLast] {
            let inst = graph_to_instance(&formula_to_graph_with(f, order));
            let k = inst.num_vars();
            assert!(k <= 6);
            for a in 0..1u64 << k {
                let a = BitVector::from_u64(k, a);
                assert_eq!(inst.evaluate(&a).unwrap().determinant().unwrap(), f.eval(&a).unwrap(), "{f} at {a}");
            }
        }
    }
}

#[test]
fn variables_act_on_disjoint_columns() {
    for f in formula_corpus() {
        let inst = graph_to_instance(&formula_to_graph(&f));
        assert!(inst.validate_simplified(), "{f}");
        let mut seen = vec![false; inst.size()];
        for m in inst.ms() {
            for c in m.nonzero_columns() {
                assert!(!seen[c]);
                seen[c] = true;
            }
        }
    }
}

/// All `(M, s)` with `M` invertible whose pullback `b ↦ (-1)^{s·b} Z^{Mb}`
/// reproduces every (Z-type) sample, read straight off the definition.
fn consistent_pullbacks(set: &SampleSet) -> Vec<(BitMatrix, BitVector)> {
    let n = set.num_qubits();
    assert!(set.iter().all(|x| x.measurement().is_z_type()));
    let mut out = Vec::new();
    for m in general_linear_group(n) {
        for signs in 0..1u64 << n {
            let s = BitVector::from_u64(n, signs);
            let ok = set.iter().all(|x| {
                let b = x.measurement().z_bits();
                let image = m.mul_vec(b).unwrap();
                let q = PauliOperator::z_power(&image).with_sign(x.measurement().is_negative() ^ s.dot(b));
                x.state().measure(&q).unwrap() == x.label()
            });
            if ok {
                out.push((m.clone(), s));
            }
        }
    }
    out
}

fn nonzero<R: Rng>(n: usize, rng: &mut R) -> BitVector {
    loop {
        let v = BitVector::random(n, rng);
        if !v.is_zero() {
            return v;
        }
    }
}

#[test]
fn pauli_constraint_is_exact() {
    let mut rng = StdRng::seed_from_u64(17);
    for n in [3, 4] {
        for trial in 0..4 {
            let b = nonzero(n, &mut rng);
            let target = PauliOperator::z_power(&b);
            let v = nonzero(n, &mut rng);
            let w = loop {
                let w = nonzero(n, &mut rng);
                if w != v {
                    break w;
                }
            };
            let one_dim = trial % 2 == 0;
            let set = constrain_pauli_samples(n, &target, &v, one_dim.then_some(&w), &mut rng).unwrap();
            assert_eq!(set.len(), if one_dim { n } else { n + 1 });
            let allowed = |u: &BitVector| *u == v || (one_dim && *u == &v ^ &w);
            let got = consistent_pullbacks(&set);
            let mut expected = 0;
            for m in general_linear_group(n) {
                if allowed(&m.mul_vec(&b).unwrap()) {
                    expected += 1 << (n - 1);
                }
            }
            assert_eq!(got.len(), expected);
            for (m, s) in got {
                assert!(allowed(&m.mul_vec(&b).unwrap()) && !s.dot(&b));
            }
        }
    }
}

#[test]
fn submatrix_constraint_is_exact() {
    let mut rng = StdRng::seed_from_u64(23);
    let n = 4;
    for columns in [[0usize, 2], [3, 1]] {
        let mut v = BitMatrix::zeros(n, 2);
        let mut w = BitMatrix::zeros(n, 2);
        for j in 0..2 {
            let vj = nonzero(n, &mut rng);
            let wj = loop {
                let x = nonzero(n, &mut rng);
                if x != vj {
                    break x;
                }
            };
            v.set_column(j, &vj).unwrap();
            w.set_column(j, &wj).unwrap();
        }
        let set = constrain_submatrix_samples(n, &columns, &v, &w, &mut rng).unwrap();
        assert_eq!(set.len(), 2 * n + 2 - 1);
        let claimed = |m: &BitMatrix, s: &BitVector| {
            let fits = |alpha: bool| {
                (0..2).all(|j| {
                    let want = if alpha { &v.column(j) ^ &w.column(j) } else { v.column(j) };
                    m.column(columns[j]) == want
                })
            };
            (fits(false) || fits(true)) && columns.iter().all(|&c| !s.get(c))
        };
        let got = consistent_pullbacks(&set);
        assert!(got.iter().all(|(m, s)| claimed(m, s)));
        let mut expected = 0;
        for m in general_linear_group(n) {
            for signs in 0..1u64 << n {
                expected += usize::from(claimed(&m, &BitVector::from_u64(n, signs)));
            }
        }
        assert_eq!(got.len(), expected);
    }
}

fn cnf_corpus() -> Vec<CnfFormula> {
    let cases: &[(usize, &[&[i64]])] = &[
        (1, &[&[1]]),
        (1, &[&[-1]]),
        (2, &[&[1], &[2]]),
        (1, &[&[1], &[-1]]),
        (1, &[&[1, -1]]),
        (1, &[&[1], &[1]]),
        (1, &[&[-1], &[-1]]),
        (1, &[&[1, 1]]),
    ];
    cases.iter().map(|(v, c)| CnfFormula::from_ints(*v, c).unwrap()).collect()
}

#[test]
fn reduction_end_to_end() {
    let mut rng = StdRng::seed_from_u64(31);
    for f in cnf_corpus() {
        let red = reduce_sat_to_samples(&f, &mut rng).unwrap();
        let n = red.instance.size();
        assert!(n <= 5);
        assert!(red.samples.len() <= n * (n + 1), "{f}");
        let sat = f.brute_force_solve().is_some();
        assert_eq!(brute_force_search(&red.samples).unwrap().outcome.is_found(), sat, "{f}");
        assert_eq!(affine_family_search(&red.instance).unwrap().is_some(), sat, "{f}");
    }
}

#[test]
fn sample_count_formula() {
    let mut rng = StdRng::seed_from_u64(2);
    for f in formula_corpus() {
        let inst = graph_to_instance(&formula_to_graph(&f));
        let n = inst.size();
        let active = inst.ms().iter().filter(|m| !m.is_zero()).count();
        let set = reduce_instance_to_samples(&inst, &mut rng).unwrap();
        assert_eq!(set.len(), n * (n + 1) - active, "{f}");
    }
}
