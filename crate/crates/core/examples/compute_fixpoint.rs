//! Propagating marks to a fixpoint with `Compute` and tracing the steps.
//!
//! `Compute` only revisits literals whose concept set changed type, so a
//! run starting from scratch seeds the worklist with every literal.

use usat::algorithms::{compute, ChoicePolicy, ComputeStatus, Run, RunConfig, Worklist};
use usat::model::{all_literals, is_defined, ConceptStore, Formula, Literal, Mark, Understanding};

fn main() {
    let formula = Formula::from_dimacs(4, &[[1, 2, 3], [1, -2, 4]]).unwrap();
    let store = ConceptStore::full(&formula);
    let x = Literal::from_dimacs(1).unwrap();
    let mut u = Understanding::from_pairs(4, [(x, Mark::True), (!x, Mark::False)]);
    let mut run = Run::new(ChoicePolicy::Fifo, RunConfig::recording());

    let worklist = Worklist::from_literals(all_literals(4));
    let status = compute(&mut run, &mut u, &store, worklist).unwrap();
    println!("status: {status:?}");
    println!("understanding: {u:?}");
    println!("defined: {}", status == ComputeStatus::Fixpoint && is_defined(&u, &store));
    print!("{}", run.trace().to_jsonl());
}
