//! Removing repeated variables from 3-SAT clauses and checking the result
//! with brute force.

use usat::io::{emit_dimacs, parse_dimacs_general};
use usat::oracle::Oracle;
use usat::reduction::reduce_to_duplicate_free;

fn main() {
    let text = "p cnf 3 4\n1 1 2 0\n-1 -1 -1 0\n2 -2 3 0\n-2 3 3 0\n";
    let (n, clauses) = parse_dimacs_general(text).unwrap();
    let report = reduce_to_duplicate_free(n, &clauses);
    println!(
        "{} tautologies removed, {} replacements, {} gadgets, fresh variables {:?}",
        report.removed_tautologies, report.replacements, report.gadgets_added, report.fresh_variables
    );
    print!("{}", emit_dimacs(&report.output));

    let oracle = Oracle::default();
    let triples: Vec<_> = clauses.iter().map(|c| c.literals).collect();
    let before = oracle.first_model(n, &triples).unwrap().is_some();
    let after = oracle.brute_force_sat(&report.output).unwrap().satisfiable;
    println!("satisfiable before {before}, after {after}");
    println!("gadgets force their variable: {}", report.gadgets.iter().all(|g| g.forces_true()));
}
