//! Depth-first search over choice scripts.
//!
//! A run under a prefix script (falling back to FIFO afterwards) produces a
//! full decision log. Children of that run flip a single decision past the
//! prefix to a later option and keep everything before it. Because scripts
//! are consumed per label, a fixed base script for an earlier phase of the
//! run can sit in front of the searched region.

use std::collections::HashMap;

use thiserror::Error;

use crate::algorithms::{
    labels, run_algorithm_u, ChoiceEntry, ChoicePolicy, ChoiceScript, Decision, Halt,
    OnExhausted, RunConfig, RunOutcome, RunReport,
};
use crate::model::Mark;

use super::instances::{instance_u, instance_u_blocks};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("no run reached the goal within {runs} runs")]
    Exhausted { runs: usize },
    #[error(transparent)]
    Halt(#[from] Halt),
}

/// Which decisions the search may flip.
#[derive(Debug, Clone)]
pub struct SearchSpace {
    /// Fixed entries consumed before any searched decision.
    pub base: Vec<ChoiceEntry>,
    pub labels: Vec<&'static str>,
    pub max_runs: usize,
}

/// A run that reached the goal.
#[derive(Debug, Clone)]
pub struct Found<O> {
    pub report: RunReport<O>,
    pub runs: usize,
}

fn entries(decisions: &[Decision]) -> Vec<ChoiceEntry> {
    decisions
        .iter()
        .map(|d| ChoiceEntry { label: d.label.to_string(), index: d.index })
        .collect()
}

/// Searches for a run satisfying `goal`.
pub fn search<O>(
    space: &SearchSpace,
    mut run: impl FnMut(ChoicePolicy) -> Result<RunReport<O>, Halt>,
    goal: impl Fn(&RunReport<O>) -> bool,
) -> Result<Found<O>, SearchError> {
    let lenient = |entries: Vec<ChoiceEntry>| {
        ChoicePolicy::Scripted(ChoiceScript::new(entries, OnExhausted::Fifo))
    };
    let first = run(lenient(space.base.clone()))?;
    if goal(&first) {
        return Ok(Found { report: first, runs: 1 });
    }

    // Decisions served by the base script are never flipped.
    let mut base_left: HashMap<&str, usize> = HashMap::new();
    for e in &space.base {
        *base_left.entry(e.label.as_str()).or_default() += 1;
    }
    let mut start = first.decisions.len();
    for (j, d) in first.decisions.iter().enumerate() {
        match base_left.get_mut(d.label) {
            Some(n) if *n > 0 => *n -= 1,
            _ if space.labels.contains(&d.label) => {
                start = j;
                break;
            }
            _ => {}
        }
    }

    let mut stack = Vec::new();
    let push_children = |stack: &mut Vec<Vec<ChoiceEntry>>, log: &[Decision], from: usize| {
        let prefix = entries(log);
        for j in from..log.len() {
            let d = log[j];
            if !space.labels.contains(&d.label) {
                continue;
            }
            for alt in d.index + 1..d.arity {
                let mut child = prefix[..j].to_vec();
                child.push(ChoiceEntry { label: d.label.to_string(), index: alt });
                stack.push(child);
            }
        }
    };
    push_children(&mut stack, &first.decisions, start);

    let mut runs = 1;
    while let Some(prefix) = stack.pop() {
        if runs >= space.max_runs {
            break;
        }
        runs += 1;
        let from = prefix.len();
        let report = run(lenient(prefix))?;
        if goal(&report) {
            return Ok(Found { report, runs });
        }
        push_children(&mut stack, &report.decisions, from);
    }
    Err(SearchError::Exhausted { runs })
}

/// Result of [`derive_adversarial_script_u`].
#[derive(Debug, Clone)]
pub struct AdversarialScript {
    /// Strict script reproducing the failing run.
    pub script: ChoiceScript,
    /// Per-block scripts that leave each head literal false.
    pub block_scripts: Vec<ChoiceScript>,
    pub runs: usize,
}

/// Searches for a policy under which Algorithm Ũ declares the satisfiable
/// thirteen-clause instance unsatisfiable.
///
/// First each four-clause block is searched for a run that ends with its head
/// literal false. With all three heads false, the last clause `(x ∨ y ∨ z)`
/// is all-false when picked, so the remaining choices (inside Algorithm D,
/// Algorithm G and `Compute`) are searched for a run where every rescue
/// attempt fails.
pub fn derive_adversarial_script_u(max_runs: usize) -> Result<AdversarialScript, SearchError> {
    let config = RunConfig::default();
    let mut base = Vec::new();
    let mut block_scripts = Vec::new();
    let mut runs = 0;
    for block in instance_u_blocks() {
        let head = block.head;
        let formula = block.formula;
        let space = SearchSpace {
            base: Vec::new(),
            labels: vec![labels::U_LITERAL, labels::COMPUTE_POP],
            max_runs,
        };
        let found = search(
            &space,
            |p| run_algorithm_u(&formula, p, config.clone()),
            |r| matches!(&r.outcome, RunOutcome::Defined(u) if u.get(head) == Mark::False),
        )?;
        runs += found.runs;
        let kept: Vec<ChoiceEntry> = entries(&found.report.decisions)
            .into_iter()
            .filter(|e| e.label != labels::U_CLAUSE)
            .collect();
        block_scripts.push(ChoiceScript::new(kept.clone(), OnExhausted::Fifo));
        base.extend(kept);
    }

    let formula = instance_u();
    let space = SearchSpace {
        base,
        labels: vec![
            labels::U_LITERAL,
            labels::D_CONCEPT,
            labels::D_LITERAL,
            labels::G_PAIR,
            labels::COMPUTE_POP,
        ],
        max_runs,
    };
    let found = search(
        &space,
        |p| run_algorithm_u(&formula, p, config.clone()),
        |r| r.outcome == RunOutcome::Fail,
    )?;
    runs += found.runs;
    Ok(AdversarialScript { script: found.report.script(), block_scripts, runs })
}
