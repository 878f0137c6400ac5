use std::cell::Cell;
use std::time::Instant;

use crate::circuit::CnotCircuit;
use crate::f2::{BitMatrix, BitVector};
use crate::pauli::PauliOperator;
use crate::sample::{LabeledSample, SampleSet};
use crate::stabilizer::{Label, StabilizerState};

use super::brute::brute_force_search;
use super::{check_consistent, ConsistencyError, Outcome, SearchResult, SearchStats};

/// A decider backed by [`brute_force_search`]; errors count as "no".
pub fn brute_force_decider(s: &SampleSet) -> bool {
    brute_force_search(s).is_ok_and(|r| r.outcome.is_found())
}

/// Turns a yes/no consistency oracle into a search procedure.
///
/// The pullback map of a CNOT circuit is fixed by `n(n+1)` bits: the sign
/// `s_c` and the column `m_c` of `C† Z_c C = (-1)^{s_c} Z^{m_c}`. Measuring
/// `Z_c` on `|0…0⟩` reads `s_c`, and on `|e_i⟩` reads `m_{ic} ⊕ s_c`. Each
/// bit is guessed by appending the sample with label 1 and asking the
/// oracle; a "no" means the opposite label must hold. The circuit built from
/// the collected bits is checked against `s` at the end, so a lying oracle
/// is reported as [`ConsistencyError::OracleFault`] rather than producing a
/// wrong answer.
///
/// A "no" on `s` itself is trusted unless the oracle also rejects the empty
/// sample set, which every circuit is consistent with.
pub fn search_from_decision<F>(s: &SampleSet, mut decide: F) -> Result<SearchResult, ConsistencyError>
where
    F: FnMut(&SampleSet) -> bool,
{
    let start = Instant::now();
    let n = s.num_qubits();
    let calls = Cell::new(0u64);
    let mut ask = |set: &SampleSet| {
        calls.set(calls.get() + 1);
        decide(set)
    };
    let finish = |outcome| SearchResult {
        outcome,
        stats: SearchStats {
            oracle_calls: calls.get(),
            wall_time: start.elapsed(),
            ..SearchStats::default()
        },
    };
    if !ask(s) {
        if !ask(&SampleSet::new(n)) {
            return Err(ConsistencyError::OracleFault(
                "rejected the empty sample set".into(),
            ));
        }
        return Ok(finish(Outcome::NoneExists));
    }
    let mut pinned = s.clone();
    let mut pin = |pinned: &mut SampleSet, state: StabilizerState, c: usize| -> Result<bool, ConsistencyError> {
        let guess = LabeledSample::new(state, PauliOperator::z_on(n, c), Label::One)?;
        let mut trial = pinned.clone();
        trial.push(guess.clone())?;
        let one = ask(&trial);
        pinned.push(if one { guess } else { guess.with_label(Label::Zero) })?;
        Ok(one)
    };
    let mut m = BitMatrix::zeros(n, n);
    let mut signs = BitVector::zeros(n);
    for c in 0..n {
        let sign = !pin(&mut pinned, StabilizerState::zero(n), c)?;
        signs.set(c, sign);
        for i in 0..n {
            let same = pin(&mut pinned, StabilizerState::basis(&BitVector::unit(n, i)), c)?;
            m.set(i, c, same == sign);
        }
    }
    let circuit = CnotCircuit::from_pullback(&m, &signs)
        .map_err(|_| ConsistencyError::OracleFault("pinned pullback matrix is singular".into()))?;
    if !check_consistent(&circuit, s)? {
        return Err(ConsistencyError::OracleFault(
            "reconstructed circuit is inconsistent with the samples".into(),
        ));
    }
    Ok(finish(Outcome::Found(circuit)))
}
