//! Algorithm Ũ declares the satisfiable thirteen-clause instance
//! unsatisfiable under an adversarial ordering of its choices.

use usat::algorithms::{run_algorithm_u, ChoicePolicy, RunConfig};
use usat::counterexamples::{
    derive_adversarial_script_u, display_named, golden_script_u, instance_u, run_refutation,
    refutation_u,
};

fn main() {
    let verdict = run_refutation(&refutation_u()).expect("frozen script replays");
    println!("{verdict}\n");

    // The first FIFO run of the same instance succeeds.
    let fifo = run_algorithm_u(&instance_u(), ChoicePolicy::Fifo, RunConfig::default()).unwrap();
    println!("fifo policy: {}", fifo.outcome.name());

    // The frozen script is the result of a bounded search, reproduced here.
    let derived = derive_adversarial_script_u(200_000).expect("search succeeds");
    println!(
        "search: {} runs, {} decisions, matches frozen script: {}",
        derived.runs,
        derived.script.len(),
        derived.script == golden_script_u()
    );
    for (block, script) in usat::counterexamples::instance_u_blocks().iter().zip(&derived.block_scripts) {
        println!("block of {}: {} scripted choices", display_named(&block.names, block.head), script.len());
    }
}
