use rand::Rng;

use crate::circuit::CnotCircuit;
use crate::sample::{LabeledSample, SampleSet};

use super::{check_consistent, ConsistencyError, Outcome, SearchResult, SearchStats};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PacOutcome {
    Hypothesis(CnotCircuit),
    Failure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PacReport {
    pub outcome: PacOutcome,
    pub draws: usize,
    pub distinct: usize,
    pub search: SearchStats,
}

/// `⌈c · s · ln s⌉` draws, at least one: enough to see all `s` points of a
/// uniform distribution with probability about `1 − s^{1−c}`.
pub fn coupon_collector_draws(s: usize, c: f64) -> usize {
    let s = s as f64;
    ((c * s * s.ln()).ceil() as usize).max(1)
}

/// Draws [`coupon_collector_draws`]`(s, c)` samples, removes duplicates and
/// hands them to `search`. A search that finds nothing yields
/// [`PacOutcome::Failure`].
pub fn pac_learner<R, D, L>(
    s: usize,
    c: f64,
    mut draw: D,
    mut search: L,
    rng: &mut R,
) -> Result<PacReport, ConsistencyError>
where
    R: Rng + ?Sized,
    D: FnMut(&mut R) -> LabeledSample,
    L: FnMut(&SampleSet) -> Result<SearchResult, ConsistencyError>,
{
    let draws = coupon_collector_draws(s, c);
    let first = draw(rng);
    let mut set = SampleSet::new(first.num_qubits());
    set.push(first)?;
    for _ in 1..draws {
        set.push(draw(rng))?;
    }
    let set = set.dedup();
    let result = search(&set)?;
    Ok(PacReport {
        outcome: match result.outcome {
            Outcome::Found(c) => PacOutcome::Hypothesis(c),
            Outcome::NoneExists => PacOutcome::Failure,
        },
        draws,
        distinct: set.len(),
        search: result.stats,
    })
}

/// The decision protocol built on a learner: learn from uniform draws over
/// `hidden` and accept iff the hypothesis is consistent with all of it.
///
/// Never accepts an inconsistent set, and accepts a consistent one whenever
/// every sample was drawn.
pub fn pac_decide<R, L>(
    hidden: &SampleSet,
    c: f64,
    search: L,
    rng: &mut R,
) -> Result<(bool, PacReport), ConsistencyError>
where
    R: Rng + ?Sized,
    L: FnMut(&SampleSet) -> Result<SearchResult, ConsistencyError>,
{
    if hidden.is_empty() {
        let identity = CnotCircuit::identity(hidden.num_qubits());
        let report = PacReport {
            outcome: PacOutcome::Hypothesis(identity),
            draws: 0,
            distinct: 0,
            search: SearchStats::default(),
        };
        return Ok((true, report));
    }
    let samples = hidden.samples();
    let draw = |rng: &mut R| samples[rng.gen_range(0..samples.len())].clone();
    let report = pac_learner(samples.len(), c, draw, search, rng)?;
    let accept = match &report.outcome {
        PacOutcome::Hypothesis(h) => check_consistent(h, hidden)?,
        PacOutcome::Failure => false,
    };
    Ok((accept, report))
}
