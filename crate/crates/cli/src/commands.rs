use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use cnotpac::consistency::{
    affine_family_search, brute_force_search_with, check_consistent, first_inconsistency, pac_decide, pac_learner,
    sample_complexity, search_from_decision, Hypothesis, LearningParameters, Outcome, PacOutcome, SearchOptions,
    SearchResult, MAX_BRUTE_FORCE_QUBITS,
};
use cnotpac::learners::{learn_single_measurement, trivial_uniform_gates, LearnerError};
use cnotpac::reduction::{arithmetize_cnf, reduce_formula_to_samples, ArithFormula, NonSingularityInstance, VertexOrder};
use cnotpac::{BitVector, CnotCircuit, SampleSet};
use rand::distributions::WeightedIndex;
use rand::prelude::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dimacs::parse_dimacs;
use crate::report::{digest_inputs, RunReport};
use crate::schema::{
    self, to_json, BatchJson, CircuitJson, DistributionJson, InstanceJson, ReductionJson, SampleSetJson,
};
use crate::{
    BenchArgs, Cli, Command, ComplexityArgs, Exit, LearnArgs, LearnMode, ReduceArgs, SolveArgs, Strategy,
    VerifyArgs,
};

/// What a command hands back for the report.
struct Done {
    exit: Exit,
    inputs: Vec<Vec<u8>>,
    seed: Option<u64>,
    outcome: &'static str,
    samples: usize,
    circuits_examined: u64,
}

impl Done {
    fn new(exit: Exit, outcome: &'static str) -> Self {
        Self {
            exit,
            inputs: Vec::new(),
            seed: None,
            outcome,
            samples: 0,
            circuits_examined: 0,
        }
    }
}

/// Runs the parsed command line; every path ends in exit code 0, 1 or 2.
pub fn run(cli: &Cli) -> Exit {
    let start = Instant::now();
    let name = match &cli.command {
        Command::Reduce(_) => "reduce",
        Command::Solve(_) => "solve",
        Command::Verify(_) => "verify",
        Command::Learn(_) => "learn",
        Command::Complexity(_) => "complexity",
        Command::Bench(_) => "bench",
    };
    let result = match &cli.command {
        Command::Reduce(a) => reduce(a),
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Learn(a) => learn(a),
        Command::Complexity(a) => complexity(a),
        Command::Bench(a) => bench(a),
    };
    let done = match result {
        Ok(done) => done,
        Err(e) => {
            eprintln!("error: {e:#}");
            Done::new(Exit::Failure, "error")
        }
    };
    let report = RunReport::new(
        name,
        digest_inputs(done.inputs.iter().map(Vec::as_slice)),
        done.seed,
        done.outcome,
        done.samples,
        done.circuits_examined,
        start.elapsed(),
    );
    let emitted = match &cli.report {
        Some(path) => fs::write(path, report.to_json() + "\n").with_context(|| format!("writing {}", path.display())),
        None => {
            eprintln!("{}", report.to_json());
            Ok(())
        }
    };
    match emitted {
        Ok(()) => done.exit,
        Err(e) => {
            eprintln!("error: {e:#}");
            Exit::Failure
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(bytes: &[u8], path: &Path) -> Result<T> {
    serde_json::from_slice(bytes).with_context(|| format!("parsing {}", path.display()))
}

fn reduce(a: &ReduceArgs) -> Result<Done> {
    let (inputs, formula) = match (&a.cnf, &a.formula) {
        (Some(path), _) => {
            let bytes = read(path)?;
            let text = String::from_utf8(bytes.clone()).with_context(|| format!("{} is not UTF-8", path.display()))?;
            let cnf = parse_dimacs(&text).with_context(|| format!("parsing {}", path.display()))?;
            (vec![bytes], arithmetize_cnf(&cnf))
        }
        (None, Some(expr)) => {
            let f: ArithFormula = expr.parse().context("parsing --formula")?;
            (vec![expr.as_bytes().to_vec()], f)
        }
        (None, None) => bail!("either a CNF path or --formula is required"),
    };
    let order = if a.fig2_compat {
        VertexOrder::TargetLast
    } else {
        VertexOrder::Construction
    };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let red = reduce_formula_to_samples(&formula, order, &mut rng)?;
    let json = ReductionJson {
        formula: red.formula.to_string(),
        matrix: schema::symbolic_rows(&red.instance),
        instance: InstanceJson::from(&red.instance),
        samples: SampleSetJson::from(&red.samples),
    };
    emit(a.out.as_deref(), &to_json(&json))?;
    let summary = format!("instance size: {}\nsamples: {}", red.instance.size(), red.samples.len());
    if a.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(Done {
        inputs,
        seed: Some(a.seed),
        samples: red.samples.len(),
        ..Done::new(Exit::Success, "reduced")
    })
}

enum SolveInput {
    Samples(SampleSet),
    Instance(NonSingularityInstance, Option<SampleSet>),
}

fn load_solve_input(bytes: &[u8], path: &Path) -> Result<SolveInput> {
    let value: serde_json::Value = parse_json(bytes, path)?;
    if value.get("instance").is_some() {
        let r: ReductionJson = serde_json::from_value(value)?;
        let inst = NonSingularityInstance::try_from(&r.instance)?;
        Ok(SolveInput::Instance(inst, Some(SampleSet::try_from(&r.samples)?)))
    } else if value.get("m0").is_some() {
        let i: InstanceJson = serde_json::from_value(value)?;
        Ok(SolveInput::Instance(NonSingularityInstance::try_from(&i)?, None))
    } else {
        let s: SampleSetJson = serde_json::from_value(value)?;
        Ok(SolveInput::Samples(SampleSet::try_from(&s)?))
    }
}

fn samples_of(input: SolveInput) -> Result<SampleSet> {
    match input {
        SolveInput::Samples(s) | SolveInput::Instance(_, Some(s)) => Ok(s),
        SolveInput::Instance(_, None) => bail!("this strategy needs a sample set, not a bare instance"),
    }
}

fn check_limit(s: &SampleSet) -> Result<()> {
    if s.num_qubits() > MAX_BRUTE_FORCE_QUBITS {
        bail!(
            "n = {} exceeds the enumeration limit of {MAX_BRUTE_FORCE_QUBITS} qubits",
            s.num_qubits()
        );
    }
    Ok(())
}

fn circuit_json(c: &CnotCircuit) -> String {
    to_json(&CircuitJson::new(c.num_qubits(), c.gates(), true))
}

#[derive(Serialize)]
struct AffineJson {
    assignment: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    circuit: Option<CircuitJson>,
}

fn solve(a: &SolveArgs) -> Result<Done> {
    let bytes = read(&a.input)?;
    let input = load_solve_input(&bytes, &a.input)?;
    let opts = SearchOptions { workers: a.workers };
    let mut done = Done {
        inputs: vec![bytes],
        seed: a.seed,
        ..Done::new(Exit::Negative, "none")
    };
    let result: SearchResult = match a.strategy {
        Strategy::Affine => {
            let (inst, samples) = match input {
                SolveInput::Instance(i, s) => (i, s),
                SolveInput::Samples(_) => bail!("the affine strategy needs an instance or `reduce` output"),
            };
            let Some(assignment) = affine_family_search(&inst)? else {
                println!("no assignment makes the family invertible");
                return Ok(done);
            };
            let m = inst.evaluate(&assignment)?;
            if m.rank() != inst.size() {
                bail!("internal error: witness M(a) is singular");
            }
            let circuit = match samples {
                Some(s) => {
                    let c = CnotCircuit::from_pullback(&m, &BitVector::zeros(inst.size()))?;
                    if !check_consistent(&c, &s)? {
                        bail!("internal error: witness circuit is inconsistent with the samples");
                    }
                    done.samples = s.len();
                    Some(CircuitJson::new(c.num_qubits(), c.gates(), true))
                }
                None => None,
            };
            let out = AffineJson {
                assignment: assignment.to_string(),
                circuit,
            };
            emit(a.out.as_deref(), &to_json(&out))?;
            done.exit = Exit::Success;
            done.outcome = "found";
            return Ok(done);
        }
        Strategy::Brute => {
            let s = samples_of(input)?;
            check_limit(&s)?;
            done.samples = s.len();
            let r = brute_force_search_with(&s, &opts)?;
            verify_witness(&r, &s)?;
            r
        }
        Strategy::Decision => {
            let s = samples_of(input)?;
            check_limit(&s)?;
            done.samples = s.len();
            let decide = |x: &SampleSet| brute_force_search_with(x, &opts).is_ok_and(|r| r.outcome.is_found());
            let r = search_from_decision(&s, decide)?;
            verify_witness(&r, &s)?;
            r
        }
    };
    done.circuits_examined = result.stats.circuits_examined;
    match result.outcome {
        Outcome::Found(c) => {
            emit(a.out.as_deref(), &circuit_json(&c))?;
            done.exit = Exit::Success;
            done.outcome = "found";
        }
        Outcome::NoneExists => println!("no consistent CNOT circuit exists"),
    }
    Ok(done)
}

fn verify_witness(r: &SearchResult, s: &SampleSet) -> Result<()> {
    if let Outcome::Found(c) = &r.outcome {
        if !check_consistent(c, s)? {
            bail!("internal error: search returned an inconsistent circuit");
        }
    }
    Ok(())
}

fn verify(a: &VerifyArgs) -> Result<Done> {
    let cbytes = read(&a.circuit)?;
    let sbytes = read(&a.samples)?;
    let circuit: CircuitJson = parse_json(&cbytes, &a.circuit)?;
    let tableau = circuit.tableau().with_context(|| format!("invalid circuit in {}", a.circuit.display()))?;
    let samples: SampleSetJson = parse_json(&sbytes, &a.samples)?;
    let samples = SampleSet::try_from(&samples).with_context(|| format!("invalid samples in {}", a.samples.display()))?;
    if tableau.num_qubits() != samples.num_qubits() {
        bail!(
            "circuit acts on {} qubits but the samples on {}",
            tableau.num_qubits(),
            samples.num_qubits()
        );
    }
    let mut done = Done {
        inputs: vec![cbytes, sbytes],
        samples: samples.len(),
        ..Done::new(Exit::Success, "consistent")
    };
    match first_inconsistency(Hypothesis::Clifford(&tableau), &samples)? {
        None => println!("consistent with all {} samples", samples.len()),
        Some(i) => {
            println!("inconsistent: sample {i}");
            done.exit = Exit::Negative;
            done.outcome = "inconsistent";
        }
    }
    Ok(done)
}

fn learn(a: &LearnArgs) -> Result<Done> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let input = || a.input.as_deref().ok_or_else(|| anyhow!("--input is required for this mode"));
    match a.mode {
        LearnMode::Trivial => {
            let n = a.qubits.ok_or_else(|| anyhow!("--qubits is required for the trivial learner"))?;
            let gates = trivial_uniform_gates(n, &mut rng);
            emit(a.out.as_deref(), &to_json(&CircuitJson::new(n, &gates, true)))?;
            Ok(Done {
                inputs: vec![n.to_string().into_bytes()],
                seed: Some(a.seed),
                ..Done::new(Exit::Success, "hypothesis")
            })
        }
        LearnMode::SingleMeasurement => {
            let path = input()?;
            let bytes = read(path)?;
            let batch: BatchJson = parse_json(&bytes, path)?;
            let batch = batch.parse()?;
            let mut done = Done {
                inputs: vec![bytes],
                seed: Some(a.seed),
                samples: batch.len(),
                ..Done::new(Exit::Success, "hypothesis")
            };
            match learn_single_measurement(&batch, &mut rng) {
                Ok(r) => {
                    if !check_consistent(&r.circuit, &batch.to_sample_set())? {
                        bail!("internal error: learned circuit is inconsistent with the batch");
                    }
                    emit(a.out.as_deref(), &circuit_json(&r.circuit))?;
                }
                Err(LearnerError::EmptyIntersection) => {
                    println!("no CNOT circuit is consistent with the batch");
                    done.exit = Exit::Negative;
                    done.outcome = "empty-intersection";
                }
                Err(e) => return Err(e.into()),
            }
            Ok(done)
        }
        LearnMode::Pac => {
            let path = input()?;
            let bytes = read(path)?;
            let dist: DistributionJson = parse_json(&bytes, path)?;
            let (set, weights) = dist.parse()?;
            check_limit(&set)?;
            let opts = SearchOptions { workers: a.workers };
            let search = |s: &SampleSet| brute_force_search_with(s, &opts);
            let mut done = Done {
                inputs: vec![bytes],
                seed: Some(a.seed),
                ..Done::new(Exit::Success, "hypothesis")
            };
            let support: Vec<usize> = (0..weights.len()).filter(|&i| weights[i] > 0.0).collect();
            let report = if a.decide {
                let hidden = SampleSet::from_samples(
                    set.num_qubits(),
                    support.iter().map(|&i| set.samples()[i].clone()).collect(),
                )?;
                let (accept, report) = pac_decide(&hidden, a.draw_constant, search, &mut rng)?;
                if !accept {
                    done.exit = Exit::Negative;
                    done.outcome = "reject";
                } else {
                    done.outcome = "accept";
                }
                println!("{}", if accept { "accept" } else { "reject" });
                report
            } else {
                let index = WeightedIndex::new(&weights).context("invalid weights")?;
                let draw = |r: &mut ChaCha8Rng| set.samples()[index.sample(r)].clone();
                pac_learner(support.len(), a.draw_constant, draw, search, &mut rng)?
            };
            done.samples = report.draws;
            done.circuits_examined = report.search.circuits_examined;
            match &report.outcome {
                PacOutcome::Hypothesis(c) if !a.decide => emit(a.out.as_deref(), &circuit_json(c))?,
                PacOutcome::Hypothesis(_) => {}
                PacOutcome::Failure => {
                    println!("no CNOT circuit is consistent with the drawn samples");
                    done.exit = Exit::Negative;
                    done.outcome = "failure";
                }
            }
            Ok(done)
        }
    }
}

fn complexity(a: &ComplexityArgs) -> Result<Done> {
    let mut p = LearningParameters::cnot_defaults(a.qubits);
    p.d = a.d.unwrap_or(p.d);
    p.delta = a.degree.unwrap_or(p.delta);
    p.gamma = a.gates.unwrap_or(p.gamma);
    p.epsilon = a.epsilon.unwrap_or(p.epsilon);
    p.failure_probability = a.delta.unwrap_or(p.failure_probability);
    p.alpha = a.alpha.unwrap_or(p.alpha);
    p.beta = a.beta.unwrap_or(p.beta);
    let m = sample_complexity(&p)?;
    println!("m = {}", m.samples);
    println!("note: every constant hidden in the bound is set to 1, so m shows scaling only");
    let key = format!("{p:?}");
    Ok(Done {
        inputs: vec![key.into_bytes()],
        ..Done::new(Exit::Success, "evaluated")
    })
}

#[derive(Serialize)]
struct BenchRecord {
    workers: usize,
    run: usize,
    found: bool,
    circuits_examined: u64,
    prunes: u64,
    wall_time_ms: f64,
}

fn bench(a: &BenchArgs) -> Result<Done> {
    let bytes = read(&a.input)?;
    let s = samples_of(load_solve_input(&bytes, &a.input)?)?;
    check_limit(&s)?;
    let mut first: Option<Outcome> = None;
    let mut examined = 0;
    for &workers in &a.workers {
        if workers == 0 {
            bail!("worker counts must be positive");
        }
        for run in 0..a.repeat {
            let r = brute_force_search_with(&s, &SearchOptions { workers: Some(workers) })?;
            let record = BenchRecord {
                workers,
                run,
                found: r.outcome.is_found(),
                circuits_examined: r.stats.circuits_examined,
                prunes: r.stats.prunes,
                wall_time_ms: r.stats.wall_time.as_secs_f64() * 1e3,
            };
            println!("{}", serde_json::to_string(&record)?);
            examined = r.stats.circuits_examined;
            match &first {
                None => first = Some(r.outcome),
                Some(o) if *o != r.outcome => bail!("worker count {workers} changed the search result"),
                Some(_) => {}
            }
        }
    }
    let found = first.as_ref().is_some_and(Outcome::is_found);
    Ok(Done {
        inputs: vec![bytes],
        samples: s.len(),
        circuits_examined: examined,
        ..Done::new(Exit::Success, if found { "found" } else { "none" })
    })
}
