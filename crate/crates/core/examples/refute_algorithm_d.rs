//! Algorithm D frees x on the eight-clause instance, although no defined
//! understanding of those clauses leaves x free. With reconsideration on,
//! the same run revisits a state instead.

use usat::counterexamples::{
    display_named, run_refutation, refutation_d, refutation_d_loop, INSTANCE_D_NAMES,
};
use usat::model::all_literals;

fn main() {
    let refutation = refutation_d();
    println!("instance:");
    for clause in refutation.instance.clauses() {
        let lits: Vec<String> =
            clause.literals().iter().map(|&l| display_named(&INSTANCE_D_NAMES, l)).collect();
        println!("  ({})", lits.join(" ∨ "));
    }

    let verdict = run_refutation(&refutation).expect("frozen script replays");
    println!("\n{verdict}");
    if let Some(u) = &verdict.understanding {
        let marks: Vec<String> = all_literals(u.num_vars())
            .map(|l| format!("{}:{}", display_named(&INSTANCE_D_NAMES, l), u.get(l)))
            .collect();
        println!("returned: {}", marks.join(" "));
    }

    let looping = run_refutation(&refutation_d_loop()).expect("frozen script replays");
    println!("\n{looping}");
}
