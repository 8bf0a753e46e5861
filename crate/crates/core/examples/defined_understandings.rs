//! Counting defined understandings by brute force and comparing with
//! satisfiability.

use usat::counterexamples::{display_named, instance_u_blocks};
use usat::model::{Formula, Literal, Mark};
use usat::oracle::{brute_force_sat, check_iff_claim, enumerate_defined};

fn main() {
    let single = Formula::from_dimacs(3, &[[1, 2, 3]]).unwrap();
    let all = enumerate_defined(&single, None).unwrap();
    println!("(1 ∨ 2 ∨ 3): {} defined understandings", all.defined_count.unwrap());
    let x = Literal::from_dimacs(1).unwrap();
    let w = enumerate_defined(&single, Some((x, Mark::True))).unwrap().free_witness.unwrap();
    println!("with 1 marked t: {w:?}");

    for block in instance_u_blocks() {
        let free = enumerate_defined(&block.formula, Some((block.head, Mark::Free))).unwrap();
        println!(
            "block of {}: satisfiable {}, defined with head free: {}",
            display_named(&block.names, block.head),
            brute_force_sat(&block.formula).unwrap().satisfiable,
            free.defined_count.unwrap()
        );
    }

    let unsat = Formula::from_dimacs(
        3,
        &[[1, 2, 3], [1, 2, -3], [1, -2, 3], [1, -2, -3], [-1, 2, 3], [-1, 2, -3], [-1, -2, 3], [-1, -2, -3]],
    )
    .unwrap();
    println!(
        "all eight sign patterns: defined {}, agreement {}",
        enumerate_defined(&unsat, None).unwrap().defined_count.unwrap(),
        check_iff_claim(&unsat).unwrap()
    );
}
