//! Executable models of a three-valued "understanding" approach to 3-SAT,
//! with scripted reproductions of runs where it answers wrongly.
//!
//! * [`model`]: literals, duplicate-free formulas, understandings, concepts.
//! * [`algorithms`]: `Compute`, Algorithms G, D and Ũ with replayable choice
//!   policies, budgets and JSONL traces.
//! * [`oracle`]: brute-force satisfiability and defined-understanding counts.
//! * [`reduction`]: removing repeated variables from 3-SAT clauses.
//! * [`counterexamples`]: the two refutation instances and their verdicts.
//! * [`io`]: DIMACS, understanding documents and the differential fuzzer.

pub mod algorithms;
pub mod counterexamples;
pub mod io;
pub mod model;
pub mod oracle;
pub mod reduction;
