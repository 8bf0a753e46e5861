use proptest::prelude::*;

use usat::algorithms::{run_algorithm_u, ChoicePolicy, RunConfig, RunOutcome};
use usat::io::{emit_dimacs, emit_understanding, parse_dimacs, parse_understanding};
use usat::model::{is_defined, ConceptStore, Formula, Literal, Mark, Var};
use usat::oracle::{brute_force_sat, check_iff_claim, enumerate_defined, Assignment};
use usat::reduction::{gadget_forces_true, reduce_with, GeneralClause, ReductionOptions};

fn literal(var: u32, positive: bool) -> Literal {
    if positive { Var::new(var).positive() } else { Var::new(var).negative() }
}

fn clause(num_vars: u32) -> impl Strategy<Value = [Literal; 3]> {
    (
        proptest::sample::subsequence((1..=num_vars).collect::<Vec<_>>(), 3).prop_shuffle(),
        any::<[bool; 3]>(),
    )
        .prop_map(|(vars, signs)| std::array::from_fn(|i| literal(vars[i], signs[i])))
}

fn formula(max_vars: u32, max_clauses: usize) -> impl Strategy<Value = Formula> {
    (3..=max_vars).prop_flat_map(move |n| {
        proptest::collection::vec(clause(n), 0..=max_clauses)
            .prop_map(move |cs| Formula::new(n, cs).unwrap())
    })
}

fn general(max_vars: u32, max_clauses: usize) -> impl Strategy<Value = (u32, Vec<GeneralClause>)> {
    (1..=max_vars).prop_flat_map(move |n| {
        let lit = (1..=n, any::<bool>()).prop_map(|(v, s)| literal(v, s));
        let c = [lit.clone(), lit.clone(), lit].prop_map(GeneralClause::new);
        (Just(n), proptest::collection::vec(c, 0..=max_clauses))
    })
}

fn project(values: &[bool], n: u32) -> Assignment {
    Assignment::new(values[..n as usize].to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn defined_understanding_exists_iff_satisfiable(f in formula(4, 16)) {
        prop_assert!(check_iff_claim(&f).unwrap());
    }

    #[test]
    fn defined_count_splits_over_marks_of_a_literal(f in formula(4, 5), v in 1u32..=3, pos: bool) {
        let l = literal(v, pos);
        let total = enumerate_defined(&f, None).unwrap().defined_count.unwrap();
        let parts: u64 = [Mark::Free, Mark::True, Mark::False]
            .into_iter()
            .map(|m| enumerate_defined(&f, Some((l, m))).unwrap().defined_count.unwrap())
            .sum();
        prop_assert_eq!(total, parts);
    }

    #[test]
    fn enumerated_witnesses_are_defined(f in formula(4, 6)) {
        let r = enumerate_defined(&f, None).unwrap();
        if let Some(w) = r.free_witness {
            prop_assert!(is_defined(&w, &ConceptStore::full(&f)));
        }
        let sat = brute_force_sat(&f).unwrap();
        if let Some(w) = sat.witness {
            prop_assert!(w.satisfies(&f));
        }
    }

    #[test]
    fn reduction_preserves_satisfiability((n, clauses) in general(5, 8), share_gadgets: bool) {
        let r = reduce_with(n, &clauses, ReductionOptions { share_gadgets });
        let duplicate_free = r.output.clauses().iter().all(|c| {
            let [a, b, c] = c.literals();
            a.var() != b.var() && b.var() != c.var() && a.var() != c.var()
        });
        prop_assert!(duplicate_free);
        prop_assert!(r.within_size_bound());
        prop_assert_eq!(r.fresh_variables.len(), 3 * r.gadgets_added);
        prop_assert_eq!(r.output.num_vars(), r.input_vars + 3 * r.gadgets_added as u32);
        for g in &r.gadgets {
            prop_assert!(gadget_forces_true(&g.clauses(), g.forced));
        }

        let eval_input = |values: &[bool]| {
            clauses.iter().all(|c| c.literals.iter().any(|l| values[l.var().index() as usize - 1] == l.is_positive()))
        };
        let input_sat = (0u32..1 << r.input_vars).any(|bits| {
            let values: Vec<bool> = (0..r.input_vars).map(|i| bits >> i & 1 == 1).collect();
            eval_input(&values)
        });
        let Ok(out) = brute_force_sat(&r.output) else {
            prop_assert!(!share_gadgets);
            return Ok(());
        };
        prop_assert_eq!(input_sat, out.satisfiable);
        if let Some(w) = out.witness {
            prop_assert!(eval_input(project(w.values(), r.input_vars).values()));
        }
    }

    #[test]
    fn dimacs_emit_then_parse_is_identity(f in formula(9, 20)) {
        prop_assert_eq!(parse_dimacs(&emit_dimacs(&f)).unwrap(), f);
    }

    #[test]
    fn understanding_doc_round_trips(f in formula(6, 10), seed: u64) {
        let r = run_algorithm_u(&f, ChoicePolicy::SeededRandom(seed), RunConfig::default()).unwrap();
        if let RunOutcome::Defined(u) = r.outcome {
            prop_assert_eq!(parse_understanding(&emit_understanding(&u), f.num_vars()).unwrap(), u);
        }
    }

    #[test]
    fn same_seed_same_trace(f in formula(6, 12), seed: u64) {
        let run = || run_algorithm_u(&f, ChoicePolicy::SeededRandom(seed), RunConfig::recording()).unwrap();
        let (a, b) = (run(), run());
        prop_assert_eq!(a.trace.to_jsonl(), b.trace.to_jsonl());
        prop_assert_eq!(a.decisions, b.decisions);
    }

    #[test]
    fn defined_result_is_sound(f in formula(6, 14), seed: u64) {
        let r = run_algorithm_u(&f, ChoicePolicy::SeededRandom(seed), RunConfig::default()).unwrap();
        if let RunOutcome::Defined(u) = &r.outcome {
            prop_assert!(brute_force_sat(&f).unwrap().satisfiable);
            // Malformed results are reported as such, never as Defined.
            prop_assert!(is_defined(u, &ConceptStore::full(&f)));
        }
    }
}
