//! Recording the choices of a random run, freezing them into a script and
//! replaying it to a byte-identical trace.

use usat::algorithms::{run_algorithm_u, ChoicePolicy, ChoiceScript, RunConfig};
use usat::counterexamples::instance_u;

fn main() {
    let formula = instance_u();
    let first = run_algorithm_u(&formula, ChoicePolicy::SeededRandom(11), RunConfig::recording()).unwrap();
    let text = first.script().to_text();
    println!("{} after {} steps, {} decisions", first.outcome.name(), first.steps, first.decisions.len());

    let script: ChoiceScript = text.parse().unwrap();
    let replay = run_algorithm_u(&formula, ChoicePolicy::Scripted(script), RunConfig::recording()).unwrap();
    println!("replay: {}", replay.outcome.name());
    println!("digest {}", first.trace.digest());
    println!("digest {}", replay.trace.digest());
    assert_eq!(first.trace.to_jsonl(), replay.trace.to_jsonl());
}
