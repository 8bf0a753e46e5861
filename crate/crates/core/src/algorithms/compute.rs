use crate::model::{ConceptStore, Literal, Mark, SetType, Understanding};

use super::policy::labels;
use super::{Halt, Run, TraceEvent};

/// Recalculate: the mark the case table dictates for `lit` under the
/// current understanding, or `None` when `lit` falls into the undefined
/// case. Does not touch `u`.
pub fn recalculate(u: &Understanding, store: &ConceptStore, lit: Literal) -> Option<Mark> {
    store.dictated_mark(lit, u)
}

/// The pending set S of literals to recompute.
///
/// Pushing a literal also queues its negation: the mark of `¬λ` reads the
/// type of C̃[λ], so a change there concerns both. Entries are unique and
/// kept in insertion order; which one is taken next is a choice point.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Worklist {
    pending: Vec<Literal>,
}

impl Worklist {
    pub fn new() -> Self {
        Worklist::default()
    }

    pub fn from_literals(lits: impl IntoIterator<Item = Literal>) -> Self {
        let mut wl = Worklist::new();
        wl.extend(lits);
        wl
    }

    pub fn push(&mut self, lit: Literal) {
        for l in [lit, !lit] {
            if !self.pending.contains(&l) {
                self.pending.push(l);
            }
        }
    }

    pub fn extend(&mut self, lits: impl IntoIterator<Item = Literal>) {
        for l in lits {
            self.push(l);
        }
    }

    pub fn len(&self) -> usize {
        self.pending.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pending.is_empty()
    }

    pub fn literals(&self) -> &[Literal] {
        &self.pending
    }

    fn take(&mut self, run: &mut Run) -> Result<Literal, Halt> {
        let i = run.choose(labels::COMPUTE_POP, self.pending.len())?;
        Ok(self.pending.remove(i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComputeStatus {
    Fixpoint,
    /// Recalculation of this literal hit the undefined case.
    Undefined(Literal),
}

/// Compute: recalculates pending literals until no set type changes.
///
/// On `Undefined` the understanding is left as it was when the undefined
/// literal was reached.
pub fn compute(
    run: &mut Run,
    u: &mut Understanding,
    store: &ConceptStore,
    mut worklist: Worklist,
) -> Result<ComputeStatus, Halt> {
    while !worklist.is_empty() {
        run.check_budget()?;
        let lit = worklist.take(run)?;
        let result = recalculate(u, store, lit);
        run.emit(TraceEvent::Recalculate { literal: lit, result });
        let Some(mark) = result else {
            run.emit(TraceEvent::UndefinedHit { literal: lit });
            return Ok(ComputeStatus::Undefined(lit));
        };
        let changed = set_marks(run, store, u, &[(lit, mark)]);
        worklist.extend(changed.pending);
    }
    run.emit(TraceEvent::FixpointReached);
    Ok(ComputeStatus::Fixpoint)
}

/// Assigns marks and returns the literals whose C̃ set type changed as a
/// result, emitting `mark_set` and `type_changed` events.
pub fn set_marks(
    run: &mut Run,
    store: &ConceptStore,
    u: &mut Understanding,
    assignments: &[(Literal, Mark)],
) -> Worklist {
    let mut affected: Vec<Literal> = assignments
        .iter()
        .filter(|&&(l, m)| u.get(l) != m)
        .flat_map(|&(l, _)| store.containing(l).map(|c| c.focus))
        .collect();
    affected.sort();
    affected.dedup();
    let before: Vec<SetType> = affected.iter().map(|&l| store.set_type(l, u)).collect();
    for &(lit, mark) in assignments {
        let from = u.set(lit, mark);
        if from != mark {
            run.emit(TraceEvent::MarkSet { literal: lit, from, to: mark });
        }
    }
    let mut changed = Worklist::new();
    for (&lit, from) in affected.iter().zip(before) {
        let to = store.set_type(lit, u);
        if to != from {
            run.emit(TraceEvent::TypeChanged { literal: lit, from, to });
            changed.push(lit);
        }
    }
    changed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{ChoicePolicy, RunConfig};
    use crate::model::{is_defined, Formula};

    fn lit(v: i64) -> Literal {
        Literal::from_dimacs(v).unwrap()
    }

    #[test]
    fn recalculate_cases() {
        let f = Formula::from_dimacs(5, &[[1, 2, 3], [-1, 4, 5]]).unwrap();
        let store = ConceptStore::full(&f);
        let u = Understanding::all_free(5);
        // Omitted case: C̃[x] is C̃⁺ and C̃[x]⁻ nonempty.
        assert_eq!(recalculate(&u, &store, lit(1)), None);

        let single = Formula::from_dimacs(3, &[[1, 2, 3]]).unwrap();
        let store = ConceptStore::full(&single);
        let u = Understanding::all_free(3);
        assert_eq!(recalculate(&u, &store, lit(1)), Some(Mark::True));
        // C̃[¬x] empty and C̃[¬x]⁻ empty.
        let lone = ConceptStore::new(3);
        assert_eq!(recalculate(&u, &lone, lit(-1)), Some(Mark::Free));
    }

    #[test]
    fn empty_worklist_leaves_state() {
        let f = Formula::from_dimacs(3, &[[1, 2, 3]]).unwrap();
        let store = ConceptStore::full(&f);
        let mut u = Understanding::all_free(3);
        let mut run = Run::new(ChoicePolicy::Fifo, RunConfig::default());
        let status = compute(&mut run, &mut u, &store, Worklist::new()).unwrap();
        assert_eq!(status, ComputeStatus::Fixpoint);
        assert_eq!(u, Understanding::all_free(3));
    }

    #[test]
    fn single_clause_reaches_defined_fixpoint_for_every_order() {
        let f = Formula::from_dimacs(3, &[[1, 2, 3]]).unwrap();
        let store = ConceptStore::full(&f);
        for seed in 0..64 {
            let mut u = Understanding::all_free(3);
            let mut run = Run::new(ChoicePolicy::SeededRandom(seed), RunConfig::default());
            let wl = Worklist::from_literals([lit(1), lit(2), lit(3)]);
            let status = compute(&mut run, &mut u, &store, wl).unwrap();
            assert_eq!(status, ComputeStatus::Fixpoint);
            assert!(is_defined(&u, &store), "seed {seed}: {u:?}");
            let trues = [1, 2, 3].iter().filter(|&&v| u.get(lit(v)) == Mark::True).count();
            assert_eq!(trues, 1);
        }
    }

    #[test]
    fn worklist_queues_pairs_once() {
        let mut wl = Worklist::new();
        wl.push(lit(2));
        wl.push(lit(-2));
        wl.push(lit(1));
        assert_eq!(wl.literals(), &[lit(2), lit(-2), lit(1), lit(-1)]);
    }

    #[test]
    fn budget_stops_compute() {
        let f = Formula::from_dimacs(3, &[[1, 2, 3]]).unwrap();
        let store = ConceptStore::full(&f);
        let mut u = Understanding::all_free(3);
        let mut config = RunConfig::default();
        config.budget.max_steps = 2;
        let mut run = Run::new(ChoicePolicy::Fifo, config);
        let wl = Worklist::from_literals([lit(1), lit(2), lit(3)]);
        assert_eq!(compute(&mut run, &mut u, &store, wl), Err(Halt::StepBudget(2)));
    }
}
