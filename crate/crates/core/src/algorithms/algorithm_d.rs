use std::collections::{BTreeSet, HashSet};

use sha2::{Digest, Sha256};

use crate::model::{ConceptKey, ConceptStore, Literal, Mark, Understanding};

use super::algorithm_g::algorithm_g;
use super::compute::{compute, set_marks, ComputeStatus};
use super::policy::labels;
use super::{ChoicePolicy, Halt, Procedure, Run, RunConfig, RunReport, TraceEvent};

/// What a single Algorithm D invocation returns to its caller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DStatus {
    /// The understanding reached when C̃[λ]⁻ held no unconsidered concept.
    Success(Understanding),
    Fail,
    /// The `Compute` call after adopting a G witness hit the undefined case.
    Undefined,
}

/// Outcome of a top-level Algorithm D run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DOutcome {
    Success(Understanding),
    Fail,
    Undefined,
    BudgetExhausted,
    CycleDetected,
}

impl DOutcome {
    pub fn name(&self) -> &'static str {
        match self {
            DOutcome::Success(_) => "success",
            DOutcome::Fail => "fail",
            DOutcome::Undefined => "undefined",
            DOutcome::BudgetExhausted => "budget_exhausted",
            DOutcome::CycleDetected => "cycle_detected",
        }
    }
}

/// Algorithm D: try to make the false literal `lit` free while leaving the
/// marks of `protected` alone.
///
/// The "already considered" set is local to this invocation and keyed by
/// concept identity. Unless the run allows reconsideration, a concept that
/// leaves C̃[λ]⁻ and later comes back is not processed again. With
/// reconsideration on, a concept becomes eligible again once it has left,
/// and a repeat of the loop-head state `(marks, considered)` halts the run
/// with [`Halt::Cycle`].
///
/// A success whose understanding changed a protected mark is reported as
/// `Fail`: no understanding honouring the protected set was produced.
pub fn algorithm_d(
    run: &mut Run,
    u: &Understanding,
    store: &ConceptStore,
    lit: Literal,
    protected: &BTreeSet<Literal>,
) -> Result<DStatus, Halt> {
    run.enter(Procedure::AlgorithmD, lit)?;
    let status = d_body(run, u, store, lit, protected)?;
    let status = match status {
        DStatus::Success(v) if protected.iter().any(|&h| v.get(h) != u.get(h)) => DStatus::Fail,
        other => other,
    };
    let label = match status {
        DStatus::Success(_) => "success",
        DStatus::Fail => "fail",
        DStatus::Undefined => "undefined",
    };
    run.exit(Procedure::AlgorithmD, lit, label);
    Ok(status)
}

fn d_body(
    run: &mut Run,
    entry: &Understanding,
    store: &ConceptStore,
    lit: Literal,
    protected: &BTreeSet<Literal>,
) -> Result<DStatus, Halt> {
    let reconsider = run.config().allow_reconsider;
    let mut u = entry.clone();
    let mut considered: BTreeSet<ConceptKey> = BTreeSet::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut inner_protected = protected.clone();
    inner_protected.insert(lit);

    'concepts: loop {
        run.check_budget()?;
        let negative = store.negative_concepts(lit, &u);
        let negative_keys: Vec<ConceptKey> = negative.iter().map(|c| c.key()).collect();
        if reconsider {
            considered.retain(|k| negative_keys.contains(k));
        }
        let digest = state_digest(&u, &considered);
        if !seen.insert(digest.clone()) {
            run.emit(TraceEvent::StateRevisit { target: lit, digest });
            return Err(Halt::Cycle { step: run.steps() });
        }
        let pending: Vec<_> = negative.iter().filter(|c| !considered.contains(&c.key())).collect();
        if pending.is_empty() {
            return Ok(DStatus::Success(u));
        }
        let concept = *pending[run.choose(labels::D_CONCEPT, pending.len())?];
        considered.insert(concept.key());
        run.emit(TraceEvent::ConceptConsidered {
            target: lit,
            clause: concept.clause,
            focus: concept.focus,
            negative: negative_keys,
        });

        let mut queue: Vec<Literal> =
            concept.siblings.iter().copied().filter(|l| !protected.contains(l)).collect();
        while !queue.is_empty() {
            let l = queue.remove(run.choose(labels::D_LITERAL, queue.len())?);
            let mut rescued = None;
            if u.get(l) == Mark::False {
                match algorithm_d(run, &u, store, l, &inner_protected)? {
                    DStatus::Fail => continue,
                    DStatus::Undefined => return Ok(DStatus::Undefined),
                    DStatus::Success(v) => rescued = Some(v),
                }
            }
            if algorithm_g(run, rescued.as_ref().unwrap_or(&u), store, l)? {
                if let Some(v) = rescued {
                    u = v;
                }
                let worklist = set_marks(run, store, &mut u, &[(l, Mark::True), (!l, Mark::False)]);
                if let ComputeStatus::Undefined(_) = compute(run, &mut u, store, worklist)? {
                    return Ok(DStatus::Undefined);
                }
                continue 'concepts;
            }
        }
        return Ok(DStatus::Fail);
    }
}

/// Canonical digest of the loop-head state: all marks in literal order and
/// the sorted considered identities.
fn state_digest(u: &Understanding, considered: &BTreeSet<ConceptKey>) -> String {
    let mut canon = u.tokens();
    for k in considered {
        canon.push_str(&format!("|{}:{}", k.clause, k.focus));
    }
    hex::encode(&Sha256::digest(canon.as_bytes())[..12])
}

/// Runs Algorithm D from the top with an empty or given protected set.
///
/// Script errors and precondition violations are returned as errors;
/// budget exhaustion and cycles become outcomes.
pub fn run_algorithm_d(
    u: &Understanding,
    store: &ConceptStore,
    lit: Literal,
    protected: &BTreeSet<Literal>,
    policy: ChoicePolicy,
    config: RunConfig,
) -> Result<RunReport<DOutcome>, Halt> {
    if u.get(lit) != Mark::False {
        return Err(Halt::Precondition(format!("literal {lit} is not false")));
    }
    let mut run = Run::new(policy, config);
    let outcome = match algorithm_d(&mut run, u, store, lit, protected) {
        Ok(DStatus::Success(v)) => DOutcome::Success(v),
        Ok(DStatus::Fail) => DOutcome::Fail,
        Ok(DStatus::Undefined) => DOutcome::Undefined,
        Err(Halt::StepBudget(_)) | Err(Halt::DepthBudget(_)) => DOutcome::BudgetExhausted,
        Err(Halt::Cycle { .. }) => DOutcome::CycleDetected,
        Err(other) => return Err(other),
    };
    let steps = run.steps();
    let (trace, decisions) = run.into_parts();
    Ok(RunReport { outcome, steps, trace, decisions })
}
