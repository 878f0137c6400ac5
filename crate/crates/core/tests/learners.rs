use cnotpac::consistency::check_consistent;
use cnotpac::learners::{
    learn_single_measurement, single_measurement_constraints, trivial_uniform_learner, LearnerError,
    SingleMeasurementBatch,
};
use cnotpac::tableau::is_symplectic;
use cnotpac::{BitMatrix, BitVector, CnotCircuit, Label, PauliOperator, StabilizerState};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_z_measurement<R: Rng>(n: usize, rng: &mut R) -> PauliOperator {
    loop {
        let z = BitVector::random(n, rng);
        if !z.is_zero() {
            return PauliOperator::z_power(&z).with_sign(rng.gen());
        }
    }
}

/// A random state that gives the hidden circuit a binary label: half the
/// time a Z-basis state (always binary), otherwise a random stabilizer
/// state accepted only if its label is binary.
fn binary_sample<R: Rng>(c: &CnotCircuit, p: &PauliOperator, rng: &mut R) -> (StabilizerState, Label) {
    let n = c.num_qubits();
    let t = c.tableau();
    loop {
        let state = if rng.gen() {
            let basis = BitMatrix::random_invertible(n, rng);
            let rows: Vec<BitVector> = (0..n).map(|r| basis.row(r).clone()).collect();
            StabilizerState::from_z_basis(&rows, &BitVector::random(n, rng)).unwrap()
        } else {
            StabilizerState::random(n, 4 * n * n, rng)
        };
        let label = t.apply_to_state(&state).unwrap().measure(p).unwrap();
        if label != Label::Half {
            return (state, label);
        }
    }
}

fn hidden_batch<R: Rng>(n: usize, size: usize, rng: &mut R) -> (CnotCircuit, SingleMeasurementBatch) {
    let theta = BitMatrix::random_invertible(n, rng);
    let hidden = CnotCircuit::synthesize(&theta, &BitVector::random(n, rng)).unwrap();
    let p = random_z_measurement(n, rng);
    let samples = (0..size).map(|_| binary_sample(&hidden, &p, rng)).collect();
    (hidden, SingleMeasurementBatch::new(p, samples).unwrap())
}

/// Does `(-1)^t Z^u` reproduce every label of the batch?
fn fits(batch: &SingleMeasurementBatch, u: &BitVector, t: bool) -> bool {
    batch.samples().iter().all(|(state, label)| {
        let got = if u.is_zero() {
            Label::from_bit(!t)
        } else {
            state.measure(&PauliOperator::z_power(u).with_sign(t)).unwrap()
        };
        got == *label
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn output_is_consistent(seed in any::<u64>(), n in 1usize..=6, size in 1usize..25) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (hidden, batch) = hidden_batch(n, size, &mut rng);
        let set = batch.to_sample_set();
        prop_assert!(check_consistent(&hidden, &set).unwrap());
        let learned = learn_single_measurement(&batch, &mut rng).unwrap();
        prop_assert!(check_consistent(&learned.circuit, &set).unwrap());
    }

    #[test]
    fn intersection_is_exact(seed in any::<u64>(), n in 1usize..=4, size in 1usize..6, scramble in any::<bool>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (_, batch) = hidden_batch(n, size, &mut rng);
        let batch = if scramble {
            let samples = batch
                .samples()
                .iter()
                .map(|(s, _)| (s.clone(), Label::from_bit(rng.gen())))
                .collect();
            SingleMeasurementBatch::new(batch.measurement().clone(), samples).unwrap()
        } else {
            batch
        };
        let space = single_measurement_constraints(&batch).unwrap();
        for u in 0..1u64 << n {
            for t in [false, true] {
                let u = BitVector::from_u64(n, u);
                let mut point = u.clone();
                point.push(t);
                let inside = space.as_ref().is_some_and(|s| s.contains(&point));
                prop_assert_eq!(inside, fits(&batch, &u, t));
            }
        }
    }
}

#[test]
fn round_trip_at_five_qubits() {
    let mut rng = StdRng::seed_from_u64(0);
    let mut draws = 0;
    for _ in 0..100 {
        let (_, batch) = hidden_batch(5, 20, &mut rng);
        let learned = learn_single_measurement(&batch, &mut rng).unwrap();
        assert!(check_consistent(&learned.circuit, &batch.to_sample_set()).unwrap());
        draws += learned.completion_draws;
    }
    assert!(draws as f64 / 100.0 <= 4.0 * 5.0);
}

#[test]
fn single_constraint() {
    let mut rng = StdRng::seed_from_u64(1);
    let p = PauliOperator::z_on(3, 0);
    let batch = SingleMeasurementBatch::new(p, vec![(StabilizerState::zero(3), Label::One)]).unwrap();
    for _ in 0..20 {
        let c = learn_single_measurement(&batch, &mut rng).unwrap().circuit;
        assert!(check_consistent(&c, &batch.to_sample_set()).unwrap());
    }
}

#[test]
fn contradictory_batch_is_reported() {
    let mut rng = StdRng::seed_from_u64(1);
    let zero = StabilizerState::zero(2);
    let batch = SingleMeasurementBatch::new(
        PauliOperator::z_on(2, 1),
        vec![(zero.clone(), Label::One), (zero, Label::Zero)],
    )
    .unwrap();
    assert_eq!(learn_single_measurement(&batch, &mut rng), Err(LearnerError::EmptyIntersection));
}

#[test]
fn negative_identity_is_not_an_image() {
    // Label 0 on both |0⟩ and |1⟩ is only met by -I, which no circuit
    // produces from Z.
    let mut rng = StdRng::seed_from_u64(4);
    let one = StabilizerState::basis(&BitVector::unit(1, 0));
    let batch = SingleMeasurementBatch::new(
        PauliOperator::z_on(1, 0),
        vec![(StabilizerState::zero(1), Label::Zero), (one, Label::Zero)],
    )
    .unwrap();
    assert_eq!(learn_single_measurement(&batch, &mut rng), Err(LearnerError::EmptyIntersection));
}

#[test]
fn batch_validation() {
    let zero = StabilizerState::zero(2);
    assert_eq!(
        SingleMeasurementBatch::new(PauliOperator::x_on(2, 0), vec![(zero.clone(), Label::One)]),
        Err(LearnerError::NotZType)
    );
    assert_eq!(
        SingleMeasurementBatch::new(PauliOperator::z_on(2, 0), vec![(zero, Label::Half)]),
        Err(LearnerError::NonBinaryLabel(0))
    );
    assert_eq!(
        SingleMeasurementBatch::new(PauliOperator::z_on(2, 0), vec![]),
        Err(LearnerError::EmptyBatch)
    );
}

#[test]
fn trivial_learner_outputs_symplectic_tableaux() {
    let mut rng = StdRng::seed_from_u64(7);
    for trial in 0..1000 {
        let n = 1 + trial % 6;
        let t = trivial_uniform_learner(n, &mut rng);
        assert!(is_symplectic(&t.matrix(), n));
    }
    let mut distinct = 0;
    for seed in 0..100u64 {
        let a = trivial_uniform_learner(4, &mut StdRng::seed_from_u64(2 * seed));
        let b = trivial_uniform_learner(4, &mut StdRng::seed_from_u64(2 * seed + 1));
        distinct += usize::from(a != b);
    }
    assert_eq!(distinct, 100);
}
