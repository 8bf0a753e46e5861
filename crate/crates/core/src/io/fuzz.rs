//! Differential fuzzing of Algorithm Ũ against the brute-force oracle.
//!
//! Instance `i` draws from a ChaCha8 stream keyed by `(seed, i)`, so the
//! report does not depend on how instances are spread over threads.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algorithms::{
    run_algorithm_u, Budget, ChoicePolicy, OnExhausted, RunConfig, RunOutcome,
};
use crate::counterexamples::{golden_script_u, instance_u};
use crate::model::{is_defined, ConceptStore, Formula, Literal, Var};
use crate::oracle::{Oracle, SAT_VAR_CAP};
use crate::reduction::{reduce_to_duplicate_free, GeneralClause};

use super::dimacs::{emit_dimacs_with_comments, emit_general};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicyKind {
    Fifo,
    /// A fresh seeded random policy per instance.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DedupeMode {
    /// Generate duplicate-free clauses directly.
    RejectDuplicates,
    /// Generate clauses that may repeat variables and reduce them first.
    ReduceFirst,
}

/// A fixed instance run before the random ones.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub formula: Formula,
    pub policy: ChoicePolicy,
}

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub seed: u64,
    pub instances: usize,
    pub variables: RangeInclusive<u32>,
    pub clauses: RangeInclusive<usize>,
    pub policy: PolicyKind,
    pub dedupe: DedupeMode,
    pub budget: Budget,
    pub corpus: Vec<CorpusEntry>,
    /// Where shrunk disagreements are written as DIMACS.
    pub artifact_dir: Option<PathBuf>,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            instances: 100,
            variables: 3..=7,
            clauses: 1..=30,
            policy: PolicyKind::Random,
            dedupe: DedupeMode::RejectDuplicates,
            budget: Budget { max_steps: 200_000, max_depth: 200 },
            corpus: Vec::new(),
            artifact_dir: None,
        }
    }
}

impl FuzzConfig {
    /// Adds the thirteen-clause instance under its frozen adversarial script.
    pub fn with_known_counterexample(mut self) -> Self {
        let mut script = golden_script_u();
        script.on_exhausted = OnExhausted::Fifo;
        self.corpus.push(CorpusEntry {
            name: "instance_u".to_string(),
            formula: instance_u(),
            policy: ChoicePolicy::Scripted(script),
        });
        self
    }
}

#[derive(Debug, Error)]
pub enum FuzzError {
    #[error("invalid fuzz configuration: {0}")]
    Config(String),
    #[error("instance {index} exceeds the oracle cap of {cap} variables")]
    Cap { index: usize, cap: u32 },
    #[error("writing artifact {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DisagreementKind {
    /// Fail on a satisfiable instance.
    WrongFail,
    /// Undefined on a satisfiable instance.
    WrongUndefined,
    /// Defined on an unsatisfiable instance.
    DefinedOnUnsat,
    /// Returned an understanding that fails the defined-ness audit.
    Malformed,
}

impl fmt::Display for DisagreementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DisagreementKind::WrongFail => "wrong_fail",
            DisagreementKind::WrongUndefined => "wrong_undefined",
            DisagreementKind::DefinedOnUnsat => "defined_on_unsat",
            DisagreementKind::Malformed => "malformed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub index: usize,
    pub source: String,
    pub kind: DisagreementKind,
    pub policy: String,
    pub clauses_before: usize,
    pub clauses_after: usize,
    /// The shrunk instance as DIMACS.
    pub shrunk_dimacs: String,
    /// The shrunk instance still disagrees when run again.
    pub reconfirmed: bool,
    pub artifact: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub instances: usize,
    pub satisfiable: usize,
    pub unsatisfiable: usize,
    /// Algorithm Ũ outcome name → count.
    pub outcomes: BTreeMap<String, usize>,
    /// Defined results that fail `is_defined` over the full formula.
    pub audit_failures: usize,
    pub disagreements: Vec<Disagreement>,
}

impl FuzzReport {
    pub fn count(&self, kind: DisagreementKind) -> usize {
        self.disagreements.iter().filter(|d| d.kind == kind).count()
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "seed {}: {} instances, {} satisfiable, {} unsatisfiable",
            self.seed, self.instances, self.satisfiable, self.unsatisfiable
        )?;
        for (name, n) in &self.outcomes {
            writeln!(f, "  {name}: {n}")?;
        }
        writeln!(f, "audit failures: {}", self.audit_failures)?;
        write!(f, "disagreements: {}", self.disagreements.len())?;
        for d in &self.disagreements {
            write!(
                f,
                "\n  #{} {} [{}] {} clauses -> {} ({})",
                d.index, d.kind, d.source, d.clauses_before, d.clauses_after, d.policy
            )?;
            if let Some(p) = &d.artifact {
                write!(f, " {}", p.display())?;
            }
        }
        Ok(())
    }
}

/// An instance in either dialect.
#[derive(Debug, Clone)]
enum Instance {
    Strict(Formula),
    General(u32, Vec<GeneralClause>),
}

impl Instance {
    fn len(&self) -> usize {
        match self {
            Instance::Strict(f) => f.len(),
            Instance::General(_, cs) => cs.len(),
        }
    }

    fn without(&self, i: usize) -> Instance {
        match self {
            Instance::Strict(f) => {
                let mut cs = f.triples();
                cs.remove(i);
                Instance::Strict(Formula::new(f.num_vars(), cs).expect("subset"))
            }
            Instance::General(n, cs) => {
                let mut cs = cs.clone();
                cs.remove(i);
                Instance::General(*n, cs)
            }
        }
    }

    fn solver_input(&self) -> Formula {
        match self {
            Instance::Strict(f) => f.clone(),
            Instance::General(n, cs) => reduce_to_duplicate_free(*n, cs).output,
        }
    }

    fn satisfiable(&self, index: usize) -> Result<bool, FuzzError> {
        let (n, clauses) = match self {
            Instance::Strict(f) => (f.num_vars(), f.triples()),
            Instance::General(n, cs) => (*n, cs.iter().map(|c| c.literals).collect()),
        };
        Oracle::default()
            .first_model(n, &clauses)
            .map(|m| m.is_some())
            .map_err(|_| FuzzError::Cap { index, cap: SAT_VAR_CAP })
    }

    fn to_dimacs(&self, comments: &[String]) -> String {
        match self {
            Instance::Strict(f) => emit_dimacs_with_comments(f, comments),
            Instance::General(n, cs) => {
                let body = emit_general(*n, cs);
                let mut out: String = comments.iter().map(|c| format!("c {c}\n")).collect();
                out.push_str(&body);
                out
            }
        }
    }
}

/// Result of running one instance.
struct Checked {
    satisfiable: bool,
    outcome: &'static str,
    audit_failed: bool,
    disagreement: Option<DisagreementKind>,
}

fn check(instance: &Instance, policy: &ChoicePolicy, budget: Budget, index: usize) -> Result<Checked, FuzzError> {
    let satisfiable = instance.satisfiable(index)?;
    let formula = instance.solver_input();
    let config = RunConfig { budget, ..RunConfig::default() };
    let outcome = match run_algorithm_u(&formula, policy.clone(), config) {
        Ok(report) => report.outcome,
        // A script that no longer fits the instance: not a reproduction.
        Err(_) => {
            return Ok(Checked { satisfiable, outcome: "script_error", audit_failed: false, disagreement: None })
        }
    };
    let audit_failed = match &outcome {
        RunOutcome::Defined(u) => !is_defined(u, &ConceptStore::full(&formula)),
        _ => false,
    };
    let disagreement = match (&outcome, satisfiable) {
        (RunOutcome::Malformed(_), _) => Some(DisagreementKind::Malformed),
        (RunOutcome::Defined(_), _) if audit_failed => Some(DisagreementKind::Malformed),
        (RunOutcome::Defined(_), false) => Some(DisagreementKind::DefinedOnUnsat),
        (RunOutcome::Fail, true) => Some(DisagreementKind::WrongFail),
        (RunOutcome::Undefined, true) => Some(DisagreementKind::WrongUndefined),
        _ => None,
    };
    Ok(Checked { satisfiable, outcome: outcome.name(), audit_failed, disagreement })
}

/// Greedy clause deletion: drop any clause whose removal keeps the same
/// kind of disagreement, until none can be dropped.
fn shrink(
    instance: &Instance,
    policy: &ChoicePolicy,
    budget: Budget,
    index: usize,
    kind: DisagreementKind,
) -> Result<Instance, FuzzError> {
    let mut current = instance.clone();
    let mut i = 0;
    while i < current.len() {
        let candidate = current.without(i);
        if check(&candidate, policy, budget, index)?.disagreement == Some(kind) {
            current = candidate;
        } else {
            i += 1;
        }
    }
    Ok(current)
}

fn random_instance(rng: &mut ChaCha8Rng, cfg: &FuzzConfig) -> Instance {
    let n = rng.random_range(cfg.variables.clone());
    let m = rng.random_range(cfg.clauses.clone());
    let lit = |rng: &mut ChaCha8Rng, v: u32| {
        let l = Var::new(v + 1).positive();
        if rng.random_bool(0.5) { !l } else { l }
    };
    match cfg.dedupe {
        DedupeMode::RejectDuplicates => {
            let clauses = (0..m)
                .map(|_| {
                    let vs = sample(rng, n as usize, 3);
                    [0, 1, 2].map(|k| lit(rng, vs.index(k) as u32))
                })
                .collect();
            Instance::Strict(Formula::new(n, clauses).expect("distinct variables"))
        }
        DedupeMode::ReduceFirst => {
            let clauses = (0..m)
                .map(|_| {
                    let lits: [Literal; 3] =
                        [0, 1, 2].map(|_| rng.random_range(0..n)).map(|v| lit(rng, v));
                    GeneralClause::new(lits)
                })
                .collect();
            Instance::General(n, clauses)
        }
    }
}

fn validate(cfg: &FuzzConfig) -> Result<(), FuzzError> {
    let (lo, hi) = (*cfg.variables.start(), *cfg.variables.end());
    if lo > hi || cfg.clauses.start() > cfg.clauses.end() {
        return Err(FuzzError::Config("empty range".into()));
    }
    if cfg.dedupe == DedupeMode::RejectDuplicates && lo < 3 {
        return Err(FuzzError::Config("duplicate-free clauses need at least 3 variables".into()));
    }
    if lo == 0 {
        return Err(FuzzError::Config("at least one variable is needed".into()));
    }
    if hi > SAT_VAR_CAP {
        return Err(FuzzError::Config(format!("more than {SAT_VAR_CAP} variables")));
    }
    Ok(())
}

pub fn fuzz_differential(cfg: &FuzzConfig) -> Result<FuzzReport, FuzzError> {
    validate(cfg)?;
    let mut jobs: Vec<(String, Instance, ChoicePolicy)> = cfg
        .corpus
        .iter()
        .map(|e| (e.name.clone(), Instance::Strict(e.formula.clone()), e.policy.clone()))
        .collect();
    for i in 0..cfg.instances {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(i as u64);
        let instance = random_instance(&mut rng, cfg);
        let policy = match cfg.policy {
            PolicyKind::Fifo => ChoicePolicy::Fifo,
            PolicyKind::Random => ChoicePolicy::SeededRandom(rng.random()),
        };
        jobs.push(("random".to_string(), instance, policy));
    }

    let results: Vec<(Checked, Option<Disagreement>)> = jobs
        .par_iter()
        .enumerate()
        .map(|(index, (source, instance, policy))| {
            let checked = check(instance, policy, cfg.budget, index)?;
            let Some(kind) = checked.disagreement else {
                return Ok((checked, None));
            };
            let shrunk = shrink(instance, policy, cfg.budget, index, kind)?;
            let reconfirmed = check(&shrunk, policy, cfg.budget, index)?.disagreement == Some(kind);
            let policy_text = match policy {
                ChoicePolicy::SeededRandom(s) => format!("random {s}"),
                other => other.kind().to_string(),
            };
            let comments = vec![
                format!("disagreement {kind} on instance {index} ({source})"),
                format!("policy {policy_text}"),
                format!("fuzz seed {}", cfg.seed),
                format!("shrunk from {} clauses", instance.len()),
            ];
            let shrunk_dimacs = shrunk.to_dimacs(&comments);
            Ok((
                checked,
                Some(Disagreement {
                    index,
                    source: source.clone(),
                    kind,
                    policy: policy_text,
                    clauses_before: instance.len(),
                    clauses_after: shrunk.len(),
                    shrunk_dimacs,
                    reconfirmed,
                    artifact: None,
                }),
            ))
        })
        .collect::<Result<_, FuzzError>>()?;

    let mut report = FuzzReport {
        seed: cfg.seed,
        instances: jobs.len(),
        satisfiable: 0,
        unsatisfiable: 0,
        outcomes: BTreeMap::new(),
        audit_failures: 0,
        disagreements: Vec::new(),
    };
    for (checked, disagreement) in results {
        if checked.satisfiable {
            report.satisfiable += 1;
        } else {
            report.unsatisfiable += 1;
        }
        *report.outcomes.entry(checked.outcome.to_string()).or_default() += 1;
        report.audit_failures += checked.audit_failed as usize;
        report.disagreements.extend(disagreement);
    }
    if let Some(dir) = &cfg.artifact_dir {
        write_artifacts(dir, &mut report.disagreements)?;
    }
    Ok(report)
}

fn write_artifacts(dir: &Path, disagreements: &mut [Disagreement]) -> Result<(), FuzzError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| FuzzError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    for d in disagreements {
        let path = dir.join(format!("disagreement-{:05}-{}.cnf", d.index, d.kind));
        fs::write(&path, &d.shrunk_dimacs).map_err(io(&path))?;
        d.artifact = Some(path);
    }
    Ok(())
}
