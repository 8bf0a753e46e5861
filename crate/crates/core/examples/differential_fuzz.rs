//! Differential fuzzing of Algorithm Ũ against brute force, with the known
//! counterexample in the corpus and shrunk artifacts on disk.

use usat::io::{fuzz_differential, FuzzConfig};

fn main() {
    let dir = std::env::temp_dir().join("usat-fuzz-example");
    let cfg = FuzzConfig {
        seed: 2024,
        instances: 300,
        artifact_dir: Some(dir.clone()),
        ..FuzzConfig::default()
    }
    .with_known_counterexample();
    let report = fuzz_differential(&cfg).expect("within caps");
    println!("{report}");
    println!("artifacts in {}", dir.display());
}
