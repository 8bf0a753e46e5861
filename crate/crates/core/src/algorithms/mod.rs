//! The understanding procedures: `Compute`, Algorithm G, Algorithm D and
//! Algorithm Ũ, transcribed with injectable choice policies, step budgets,
//! cycle detection and trace emission.
//!
//! All procedures thread a [`Run`] which owns the policy state, the budget
//! counters and the trace. Early exits that abort the whole run (budget,
//! cycle, script problems) travel as [`Halt`]; outcomes the procedures
//! themselves can return (`Undefined`, `FAIL`) are ordinary values.

mod algorithm_d;
mod algorithm_g;
mod algorithm_u;
mod compute;
pub mod policy;
pub mod trace;

use thiserror::Error;

pub use algorithm_d::{algorithm_d, run_algorithm_d, DOutcome, DStatus};
pub use algorithm_g::{algorithm_g, algorithm_g_witness};
pub use algorithm_u::{algorithm_u, run_algorithm_u, RunOutcome, UStatus};
pub use compute::{compute, recalculate, set_marks, ComputeStatus, Worklist};
pub use policy::{
    labels, ChoiceEntry, ChoicePolicy, ChoiceScript, Chooser, Decision, OnExhausted, ScriptError,
    ScriptParseError,
};
pub use trace::{Procedure, Trace, TraceEvent, TraceRecord};

/// Limits that turn nontermination into a reportable outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of trace steps for the whole run.
    pub max_steps: u64,
    /// Maximum nesting of Algorithm D calls.
    pub max_depth: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_steps: 1_000_000, max_depth: 1_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunConfig {
    pub budget: Budget,
    /// Lets Algorithm D process a concept again after it left and re-entered
    /// C̃[λ]⁻. Off reproduces the procedure as written.
    pub allow_reconsider: bool,
    /// Keep every trace event in memory.
    pub record_trace: bool,
}

impl RunConfig {
    pub fn recording() -> Self {
        RunConfig { record_trace: true, ..RunConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Halt {
    #[error("step budget of {0} exhausted")]
    StepBudget(u64),
    #[error("recursion depth budget of {0} exceeded")]
    DepthBudget(u32),
    #[error("state revisited at step {step}")]
    Cycle { step: u64 },
    #[error(transparent)]
    Script(#[from] ScriptError),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Mutable context of a single run.
#[derive(Debug)]
pub struct Run {
    chooser: Chooser,
    config: RunConfig,
    trace: Trace,
    depth: u32,
}

impl Run {
    pub fn new(policy: ChoicePolicy, config: RunConfig) -> Self {
        let trace = if config.record_trace { Trace::recording() } else { Trace::counting() };
        Run { chooser: Chooser::new(policy), config, trace, depth: 0 }
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    pub fn trace(&self) -> &Trace {
        &self.trace
    }

    pub fn steps(&self) -> u64 {
        self.trace.steps()
    }

    pub fn decisions(&self) -> &[Decision] {
        self.chooser.decisions()
    }

    pub fn into_parts(self) -> (Trace, Vec<Decision>) {
        (self.trace, self.chooser.into_decisions())
    }

    pub(crate) fn emit(&mut self, event: TraceEvent) {
        self.trace.push(event);
    }

    pub(crate) fn check_budget(&self) -> Result<(), Halt> {
        let max = self.config.budget.max_steps;
        if self.trace.steps() >= max {
            return Err(Halt::StepBudget(max));
        }
        Ok(())
    }

    pub(crate) fn choose(&mut self, label: &'static str, arity: usize) -> Result<usize, Halt> {
        let index = self.chooser.choose(label, arity)?;
        if arity > 1 {
            self.emit(TraceEvent::Choice { label, index, arity });
        }
        Ok(index)
    }

    pub(crate) fn enter(&mut self, procedure: Procedure, literal: crate::model::Literal) -> Result<(), Halt> {
        let max = self.config.budget.max_depth;
        if procedure == Procedure::AlgorithmD {
            if self.depth >= max {
                return Err(Halt::DepthBudget(max));
            }
            self.depth += 1;
        }
        let depth = self.depth;
        self.emit(TraceEvent::RecurseEnter { procedure, literal, depth });
        Ok(())
    }

    pub(crate) fn exit(&mut self, procedure: Procedure, literal: crate::model::Literal, result: &'static str) {
        let depth = self.depth;
        self.emit(TraceEvent::RecurseExit { procedure, literal, depth, result });
        if procedure == Procedure::AlgorithmD {
            self.depth -= 1;
        }
    }
}

/// Result of a top-level run together with its trace and decision log.
#[derive(Debug, Clone)]
pub struct RunReport<T> {
    pub outcome: T,
    pub steps: u64,
    pub trace: Trace,
    pub decisions: Vec<Decision>,
}

impl<T> RunReport<T> {
    /// Freezes the run's decisions into a replayable script.
    pub fn script(&self) -> ChoiceScript {
        ChoiceScript::from_decisions(&self.decisions, OnExhausted::Strict)
    }
}
