use crate::model::{ConceptStore, Literal, Mark, Understanding};

use super::compute::{compute, set_marks, ComputeStatus};
use super::policy::labels;
use super::{Halt, Procedure, Run};

/// The sibling assignments tried for each concept, in their default order.
const SIBLING_PAIRS: [(Mark, Mark); 4] = [
    (Mark::Free, Mark::Free),
    (Mark::Free, Mark::False),
    (Mark::False, Mark::Free),
    (Mark::False, Mark::False),
];

/// Algorithm G: can `lit` be made true?
///
/// Sets `lit := t`, `¬lit := f`, then for each concept of C̃[lit] tries the
/// four ways of marking its siblings with ε or f. The first assignment whose
/// `Compute` ends in a fixpoint makes G answer true. Every branch works on a
/// copy, so the caller's understanding is never modified. When C̃[lit] is
/// empty the loop has nothing to try and G answers false.
pub fn algorithm_g(
    run: &mut Run,
    u: &Understanding,
    store: &ConceptStore,
    lit: Literal,
) -> Result<bool, Halt> {
    Ok(algorithm_g_witness(run, u, store, lit)?.is_some())
}

/// Algorithm G returning the fixpoint that made it succeed.
pub fn algorithm_g_witness(
    run: &mut Run,
    u: &Understanding,
    store: &ConceptStore,
    lit: Literal,
) -> Result<Option<Understanding>, Halt> {
    run.enter(Procedure::AlgorithmG, lit)?;
    let mut base = u.clone();
    // Type changes from setting l and ¬l are carried into every branch.
    let seeded = set_marks(run, store, &mut base, &[(lit, Mark::True), (!lit, Mark::False)]);
    let concepts: Vec<_> = store.focused_on(lit).copied().collect();
    for concept in concepts {
        let [first, second] = concept.siblings;
        let mut pairs = SIBLING_PAIRS.to_vec();
        while !pairs.is_empty() {
            let (m1, m2) = pairs.remove(run.choose(labels::G_PAIR, pairs.len())?);
            let mut trial = base.clone();
            let mut worklist = seeded.clone();
            worklist.extend(
                set_marks(run, store, &mut trial, &[(first, m1), (second, m2)])
                    .literals()
                    .iter()
                    .copied(),
            );
            if compute(run, &mut trial, store, worklist)? == ComputeStatus::Fixpoint {
                run.exit(Procedure::AlgorithmG, lit, "true");
                return Ok(Some(trial));
            }
        }
    }
    run.exit(Procedure::AlgorithmG, lit, "false");
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{ChoicePolicy, RunConfig};
    use crate::model::Formula;

    fn lit(v: i64) -> Literal {
        Literal::from_dimacs(v).unwrap()
    }

    #[test]
    fn single_clause_accepts_any_literal() {
        let f = Formula::from_dimacs(3, &[[1, 2, 3]]).unwrap();
        let store = ConceptStore::full(&f);
        let u = Understanding::all_free(3);
        let mut run = Run::new(ChoicePolicy::Fifo, RunConfig::default());
        let w = algorithm_g_witness(&mut run, &u, &store, lit(1)).unwrap().unwrap();
        assert_eq!(w.get(lit(1)), Mark::True);
        assert_eq!(w.get(lit(-1)), Mark::False);
        // Rolled back: the caller's understanding is untouched.
        assert_eq!(u, Understanding::all_free(3));
    }

    #[test]
    fn empty_concept_set_answers_false() {
        let f = Formula::from_dimacs(3, &[[1, 2, 3]]).unwrap();
        let store = ConceptStore::full(&f);
        let u = Understanding::all_free(3);
        let mut run = Run::new(ChoicePolicy::Fifo, RunConfig::default());
        assert!(!algorithm_g(&mut run, &u, &store, lit(-1)).unwrap());
    }
}
