//! Scripted refutation runs and their verdicts.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::algorithms::{
    run_algorithm_d, run_algorithm_u, Budget, ChoicePolicy, ChoiceScript, Decision, Halt,
    OnExhausted, RunConfig, Trace,
};
use crate::model::{ConceptStore, Formula, Literal, Mark, Understanding};
use crate::oracle::{Oracle, OracleError};

use super::instances::{
    display_named, initial_table_d, instance_d, instance_u, instance_u_witness, named,
    INSTANCE_D_NAMES, INSTANCE_U_NAMES,
};

const SCRIPT_D: &str = include_str!("../../golden/script_d.txt");
const SCRIPT_U: &str = include_str!("../../golden/script_u.txt");

/// Frozen script for the Algorithm D run on [`instance_d`].
pub fn golden_script_d() -> ChoiceScript {
    SCRIPT_D.parse().expect("golden script parses")
}

/// Frozen adversarial script for Algorithm Ũ on [`instance_u`].
pub fn golden_script_u() -> ChoiceScript {
    SCRIPT_U.parse().expect("golden script parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RefutationName {
    AlgorithmDWrongSuccess,
    AlgorithmDNontermination,
    AlgorithmUWrongFail,
}

impl RefutationName {
    pub const ALL: [RefutationName; 3] = [
        RefutationName::AlgorithmDWrongSuccess,
        RefutationName::AlgorithmDNontermination,
        RefutationName::AlgorithmUWrongFail,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RefutationName::AlgorithmDWrongSuccess => "algorithm_d_wrong_success",
            RefutationName::AlgorithmDNontermination => "algorithm_d_nontermination",
            RefutationName::AlgorithmUWrongFail => "algorithm_u_wrong_fail",
        }
    }
}

impl fmt::Display for RefutationName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The oracle query that contradicts the scripted outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleClaim {
    /// No defined understanding gives `literal` the mark `mark`.
    NoDefinedWith { literal: Literal, mark: Mark },
    /// The instance is satisfiable, optionally by a known assignment.
    Satisfiable { witness: Option<Vec<bool>> },
}

impl OracleClaim {
    pub fn description(&self, names: &[&str]) -> String {
        match self {
            OracleClaim::NoDefinedWith { literal, mark } => {
                let lit = display_named(names, *literal);
                format!("no defined understanding marks {lit} as {mark}")
            }
            OracleClaim::Satisfiable { .. } => "the instance is satisfiable".to_string(),
        }
    }
}

/// Which procedure a refutation runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    /// Algorithm D from `initial` on `target`, protected set empty.
    AlgorithmD { initial: Understanding, target: Literal },
    AlgorithmU,
}

#[derive(Debug, Clone)]
pub struct Refutation {
    pub name: RefutationName,
    pub instance: Formula,
    /// Variable names used when reporting.
    pub names: &'static [&'static str],
    pub subject: Subject,
    pub script: ChoiceScript,
    pub config: RunConfig,
    /// Outcome name the run must produce.
    pub expected: &'static str,
    pub oracle_claim: OracleClaim,
}

impl Refutation {
    pub fn by_name(name: RefutationName) -> Refutation {
        match name {
            RefutationName::AlgorithmDWrongSuccess => refutation_d(),
            RefutationName::AlgorithmDNontermination => refutation_d_loop(),
            RefutationName::AlgorithmUWrongFail => refutation_u(),
        }
    }

    pub fn initial_understanding(&self) -> Option<&Understanding> {
        match &self.subject {
            Subject::AlgorithmD { initial, .. } => Some(initial),
            Subject::AlgorithmU => None,
        }
    }
}

fn target_x() -> Literal {
    named(&INSTANCE_D_NAMES, "x").unwrap()
}

/// Algorithm D frees x although no defined understanding can.
pub fn refutation_d() -> Refutation {
    Refutation {
        name: RefutationName::AlgorithmDWrongSuccess,
        instance: instance_d(),
        names: &INSTANCE_D_NAMES,
        subject: Subject::AlgorithmD { initial: initial_table_d(), target: target_x() },
        script: golden_script_d(),
        config: RunConfig::recording(),
        expected: "success",
        oracle_claim: OracleClaim::NoDefinedWith { literal: target_x(), mark: Mark::Free },
    }
}

/// The same run, letting concepts be processed again, revisits a state.
pub fn refutation_d_loop() -> Refutation {
    let mut script = golden_script_d();
    script.on_exhausted = OnExhausted::Fifo;
    Refutation {
        name: RefutationName::AlgorithmDNontermination,
        config: RunConfig {
            budget: Budget { max_steps: 10_000, ..Budget::default() },
            allow_reconsider: true,
            record_trace: true,
        },
        script,
        expected: "cycle_detected",
        ..refutation_d()
    }
}

/// Algorithm Ũ declares a satisfiable instance unsatisfiable.
pub fn refutation_u() -> Refutation {
    Refutation {
        name: RefutationName::AlgorithmUWrongFail,
        instance: instance_u(),
        names: &INSTANCE_U_NAMES,
        subject: Subject::AlgorithmU,
        script: golden_script_u(),
        config: RunConfig::recording(),
        expected: "fail",
        oracle_claim: OracleClaim::Satisfiable { witness: Some(instance_u_witness()) },
    }
}

#[derive(Debug, Error)]
pub enum RefutationError {
    #[error("scripted run aborted: {0}")]
    Run(#[from] Halt),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub name: RefutationName,
    pub outcome: &'static str,
    pub expected: &'static str,
    /// The understanding returned by a successful run, if any.
    pub understanding: Option<Understanding>,
    pub oracle_claim: String,
    /// What the oracle found, in words.
    pub oracle_finding: String,
    pub oracle_contradicts: bool,
    pub confirmed: bool,
    pub steps: u64,
    pub trace: Trace,
    pub decisions: Vec<Decision>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "refutation: {}", self.name)?;
        writeln!(f, "run outcome: {} (expected {}) after {} steps", self.outcome, self.expected, self.steps)?;
        writeln!(f, "oracle claim: {}", self.oracle_claim)?;
        writeln!(f, "oracle finding: {}", self.oracle_finding)?;
        write!(f, "verdict: {}", if self.confirmed { "CONFIRMED" } else { "NOT CONFIRMED" })
    }
}

/// Runs the scripted procedure and the oracle query.
///
/// The verdict is confirmed when the run produced the expected outcome and
/// the oracle finding contradicts what that outcome asserts.
pub fn run_refutation(r: &Refutation) -> Result<Verdict, RefutationError> {
    let policy = ChoicePolicy::Scripted(r.script.clone());
    let (outcome, understanding, steps, trace, decisions) = match &r.subject {
        Subject::AlgorithmD { initial, target } => {
            let store = ConceptStore::full(&r.instance);
            let report = run_algorithm_d(
                initial,
                &store,
                *target,
                &BTreeSet::new(),
                policy,
                r.config.clone(),
            )?;
            let u = match &report.outcome {
                crate::algorithms::DOutcome::Success(u) => Some(u.clone()),
                _ => None,
            };
            (report.outcome.name(), u, report.steps, report.trace, report.decisions)
        }
        Subject::AlgorithmU => {
            let report = run_algorithm_u(&r.instance, policy, r.config.clone())?;
            let u = report.outcome.understanding().cloned();
            (report.outcome.name(), u, report.steps, report.trace, report.decisions)
        }
    };

    let oracle = Oracle::default();
    let (oracle_finding, oracle_contradicts) = match &r.oracle_claim {
        OracleClaim::NoDefinedWith { literal, mark } => {
            let report = oracle.enumerate_defined(&r.instance, Some((*literal, *mark)))?;
            let count = report.defined_count.unwrap_or(0);
            let lit = display_named(r.names, *literal);
            (format!("{count} defined understandings mark {lit} as {mark}"), count == 0)
        }
        OracleClaim::Satisfiable { witness } => {
            let report = oracle.brute_force_sat(&r.instance)?;
            let known = witness.as_ref().is_none_or(|w| r.instance.eval(w));
            let finding = match (&report.witness, witness) {
                (Some(_), Some(_)) if known => "satisfiable; the known witness satisfies every clause",
                (Some(_), Some(_)) => "satisfiable, but the known witness is rejected",
                (Some(_), None) => "satisfiable",
                (None, _) => "unsatisfiable",
            };
            (finding.to_string(), report.satisfiable && known)
        }
    };

    Ok(Verdict {
        name: r.name,
        outcome,
        expected: r.expected,
        understanding,
        oracle_claim: r.oracle_claim.description(r.names),
        oracle_finding,
        oracle_contradicts,
        confirmed: outcome == r.expected && oracle_contradicts,
        steps,
        trace,
        decisions,
    })
}
