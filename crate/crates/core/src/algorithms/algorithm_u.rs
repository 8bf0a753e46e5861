use std::collections::BTreeSet;

use crate::model::{concept_of, is_defined, ConceptStore, Formula, Literal, Mark, Understanding};

use super::algorithm_d::{algorithm_d, DStatus};
use super::compute::{compute, ComputeStatus, Worklist};
use super::policy::labels;
use super::{ChoicePolicy, Halt, Run, RunConfig, RunReport, TraceEvent};

/// Outcome of Algorithm Ũ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunOutcome {
    /// Normal termination with an understanding that passes `is_defined`
    /// over the full concept store.
    Defined(Understanding),
    /// Every Algorithm D rescue attempt failed: the instance is declared
    /// unsatisfiable.
    Fail,
    /// A `Compute` call or a nested Algorithm D hit the undefined case.
    Undefined,
    BudgetExhausted,
    CycleDetected,
    /// Normal termination, but the returned understanding fails the
    /// defined-ness audit.
    Malformed(Understanding),
}

impl RunOutcome {
    pub fn name(&self) -> &'static str {
        match self {
            RunOutcome::Defined(_) => "defined",
            RunOutcome::Fail => "fail",
            RunOutcome::Undefined => "undefined",
            RunOutcome::BudgetExhausted => "budget_exhausted",
            RunOutcome::CycleDetected => "cycle_detected",
            RunOutcome::Malformed(_) => "malformed",
        }
    }

    pub fn understanding(&self) -> Option<&Understanding> {
        match self {
            RunOutcome::Defined(u) | RunOutcome::Malformed(u) => Some(u),
            _ => None,
        }
    }
}

/// What [`algorithm_u`] returns before the final audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UStatus {
    Returned(Understanding, ConceptStore),
    Fail,
    Undefined,
}

/// Algorithm Ũ: adopt clauses one at a time, keeping the adopted ones
/// satisfied.
///
/// A clause whose literals are all false triggers Algorithm D on each of
/// them (order chosen by the policy) with an empty protected set; the first
/// success is adopted, and if none succeeds the run fails. Adoption inserts
/// the clause's concepts, literals that are not false first, recomputing
/// after each insertion.
pub fn algorithm_u(run: &mut Run, formula: &Formula) -> Result<UStatus, Halt> {
    let mut u = Understanding::all_free(formula.num_vars());
    let mut store = ConceptStore::new(formula.num_vars());
    let mut adopted = vec![false; formula.len()];

    loop {
        let remaining: Vec<usize> = (0..formula.len()).filter(|&i| !adopted[i]).collect();
        if remaining.is_empty() {
            return Ok(UStatus::Returned(u, store));
        }
        run.check_budget()?;
        let clause = formula.clause(crate::model::ClauseId(
            remaining[run.choose(labels::U_CLAUSE, remaining.len())?],
        ));
        let lits = clause.literals();

        if lits.iter().all(|&l| u.get(l) == Mark::False) {
            let mut rescued = false;
            for l in ordered(run, lits.to_vec())? {
                match algorithm_d(run, &u, &store, l, &BTreeSet::new())? {
                    DStatus::Success(v) => {
                        u = v;
                        rescued = true;
                        break;
                    }
                    DStatus::Fail => {}
                    DStatus::Undefined => return Ok(UStatus::Undefined),
                }
            }
            if !rescued {
                return Ok(UStatus::Fail);
            }
        }

        let (open, closed): (Vec<Literal>, Vec<Literal>) =
            lits.iter().partition(|&&l| u.get(l) != Mark::False);
        let mut order = ordered(run, open)?;
        order.extend(ordered(run, closed)?);
        for l in order {
            let concept = concept_of(l, clause).expect("literal of its own clause");
            let before = store.set_type(l, &u);
            if !store.insert(concept) {
                continue;
            }
            run.emit(TraceEvent::ConceptAdded { clause: concept.clause, focus: l });
            let after = store.set_type(l, &u);
            let mut worklist = Worklist::new();
            if before != after {
                run.emit(TraceEvent::TypeChanged { literal: l, from: before, to: after });
                worklist.push(l);
            }
            if let ComputeStatus::Undefined(_) = compute(run, &mut u, &store, worklist)? {
                return Ok(UStatus::Undefined);
            }
        }
        adopted[clause.id().0] = true;
    }
}

/// Orders `lits` by repeated `U.literal` choices.
fn ordered(run: &mut Run, mut lits: Vec<Literal>) -> Result<Vec<Literal>, Halt> {
    let mut out = Vec::with_capacity(lits.len());
    while !lits.is_empty() {
        out.push(lits.remove(run.choose(labels::U_LITERAL, lits.len())?));
    }
    Ok(out)
}

/// Runs Algorithm Ũ and audits its result.
///
/// Script errors are returned as errors; budget exhaustion and cycles
/// become outcomes.
pub fn run_algorithm_u(
    formula: &Formula,
    policy: ChoicePolicy,
    config: RunConfig,
) -> Result<RunReport<RunOutcome>, Halt> {
    let mut run = Run::new(policy, config);
    let outcome = match algorithm_u(&mut run, formula) {
        Ok(UStatus::Returned(u, store)) => {
            if is_defined(&u, &store) {
                RunOutcome::Defined(u)
            } else {
                RunOutcome::Malformed(u)
            }
        }
        Ok(UStatus::Fail) => RunOutcome::Fail,
        Ok(UStatus::Undefined) => RunOutcome::Undefined,
        Err(Halt::StepBudget(_)) | Err(Halt::DepthBudget(_)) => RunOutcome::BudgetExhausted,
        Err(Halt::Cycle { .. }) => RunOutcome::CycleDetected,
        Err(other) => return Err(other),
    };
    let steps = run.steps();
    let (trace, decisions) = run.into_parts();
    Ok(RunReport { outcome, steps, trace, decisions })
}
