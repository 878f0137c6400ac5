use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::circuit::CnotCircuit;
use crate::f2::{BitMatrix, BitVector};
use crate::sample::SampleSet;
use crate::stabilizer::Label;

use super::small::{invert_rows, pull_back, SmallGroup, SmallPauli};
use super::{ConsistencyError, Outcome, SearchResult, SearchStats};

/// Largest register the exhaustive search accepts. `|GL(5, 2)| · 2^5` is
/// about `3.2 · 10^8` candidates before pruning.
pub const MAX_BRUTE_FORCE_QUBITS: usize = 5;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; `None` uses the global rayon pool, `Some(1)` runs
    /// sequentially.
    pub workers: Option<usize>,
}

struct Compiled {
    measurement: SmallPauli,
    group: SmallGroup,
    label: Label,
}

/// Samples grouped by the first search depth at which they can be decided.
struct Plan {
    n: usize,
    samples: Vec<Compiled>,
    /// `ready[j]`: Z-type samples whose support ends at qubit `j`.
    ready: Vec<Vec<usize>>,
    /// Samples with an X part; they need `Θ` and are checked at the leaves.
    leaf: Vec<usize>,
}

#[derive(Default)]
struct Counters {
    examined: AtomicU64,
    prunes: AtomicU64,
}

type Candidate = (Vec<u64>, u64);

impl Plan {
    fn new(s: &SampleSet) -> Self {
        let n = s.num_qubits();
        let mut plan = Plan {
            n,
            samples: Vec::with_capacity(s.len()),
            ready: vec![Vec::new(); n],
            leaf: Vec::new(),
        };
        for (i, sample) in s.iter().enumerate() {
            let m = SmallPauli::from_op(sample.measurement());
            if m.x == 0 {
                plan.ready[63 - m.z.leading_zeros() as usize].push(i);
            } else {
                plan.leaf.push(i);
            }
            plan.samples.push(Compiled {
                measurement: m,
                group: SmallGroup::new(sample.state().group()),
                label: sample.label(),
            });
        }
        plan
    }

    fn passes(&self, indices: &[usize], cols: &[u64], signs: u64, theta_t: Option<&[u64]>) -> bool {
        indices.iter().all(|&i| {
            let c = &self.samples[i];
            c.group.measure(pull_back(c.measurement, cols, signs, theta_t)) == c.label
        })
    }

    fn leaf_ok(&self, cols: &[u64], signs: u64) -> bool {
        if self.leaf.is_empty() {
            return true;
        }
        let theta_t = invert_rows(cols).expect("search only visits invertible M");
        self.passes(&self.leaf, cols, signs, Some(&theta_t))
    }

    /// Tries column `j` = `c` with sign bit `sign`, then recurses. Columns
    /// are visited in increasing integer order with the sign interleaved,
    /// so the first hit is the lexicographically least `(m_0, s_0, m_1, …)`.
    fn step(
        &self,
        j: usize,
        c: u64,
        sign: u64,
        cols: &mut Vec<u64>,
        signs: u64,
        span: u64,
        k: &Counters,
    ) -> Option<Candidate> {
        cols.push(c);
        let signs = signs | sign << j;
        let found = if self.passes(&self.ready[j], cols, signs, None) {
            self.dfs(j + 1, cols, signs, extend_span(span, c), k)
        } else {
            k.prunes.fetch_add(1, Ordering::Relaxed);
            None
        };
        cols.pop();
        found
    }

    fn dfs(&self, j: usize, cols: &mut Vec<u64>, signs: u64, span: u64, k: &Counters) -> Option<Candidate> {
        if j == self.n {
            k.examined.fetch_add(1, Ordering::Relaxed);
            return self.leaf_ok(cols, signs).then(|| (cols.clone(), signs));
        }
        for c in 1..1u64 << self.n {
            if span >> c & 1 == 1 {
                continue;
            }
            for sign in 0..2 {
                if let Some(hit) = self.step(j, c, sign, cols, signs, span, k) {
                    return Some(hit);
                }
            }
        }
        None
    }
}

/// Adds `c` to a span stored as a membership mask over `GF(2)^n`.
fn extend_span(span: u64, c: u64) -> u64 {
    let mut out = span;
    let mut members = span;
    while members != 0 {
        let v = members.trailing_zeros() as u64;
        out |= 1 << (v ^ c);
        members &= members - 1;
    }
    out
}

fn to_circuit(n: usize, (cols, signs): Candidate) -> Result<CnotCircuit, ConsistencyError> {
    let columns: Vec<BitVector> = cols.iter().map(|&c| BitVector::from_u64(n, c)).collect();
    let m = BitMatrix::from_columns(n, &columns).expect("n columns of length n");
    Ok(CnotCircuit::from_pullback(&m, &BitVector::from_u64(n, signs))?)
}

pub fn brute_force_search(s: &SampleSet) -> Result<SearchResult, ConsistencyError> {
    brute_force_search_with(s, &SearchOptions::default())
}

/// Exhaustive search for a CNOT circuit consistent with `s`.
///
/// Enumerates the pullback map `b ↦ C† Z^b C`, i.e. an invertible `M` and
/// signs `s`, one column at a time. A Z-type sample depends only on the
/// columns in its support, so it is checked as soon as the last of them is
/// fixed and prunes the whole subtree on failure. The first level is split
/// across threads; the result is always the first candidate in sequential
/// order, so it does not depend on the number of workers.
pub fn brute_force_search_with(s: &SampleSet, opts: &SearchOptions) -> Result<SearchResult, ConsistencyError> {
    let start = Instant::now();
    let n = s.num_qubits();
    if n > MAX_BRUTE_FORCE_QUBITS {
        return Err(ConsistencyError::TooManyQubits {
            n,
            max: MAX_BRUTE_FORCE_QUBITS,
        });
    }
    let plan = Plan::new(s);
    let k = Counters::default();
    let found = if n == 0 {
        Some((Vec::new(), 0))
    } else {
        let tasks: Vec<(u64, u64)> = (1..1u64 << n).flat_map(|c| [(c, 0), (c, 1)]).collect();
        let run = |&(c, sign): &(u64, u64)| plan.step(0, c, sign, &mut Vec::with_capacity(n), 0, 1, &k);
        match opts.workers {
            Some(1) => tasks.iter().find_map(run),
            Some(w) => rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .expect("thread pool")
                .install(|| tasks.par_iter().find_map_first(run)),
            None => tasks.par_iter().find_map_first(run),
        }
    };
    let outcome = match found {
        Some(candidate) => Outcome::Found(to_circuit(n, candidate)?),
        None => Outcome::NoneExists,
    };
    Ok(SearchResult {
        outcome,
        stats: SearchStats {
            circuits_examined: k.examined.into_inner(),
            prunes: k.prunes.into_inner(),
            oracle_calls: 0,
            wall_time: start.elapsed(),
        },
    })
}
