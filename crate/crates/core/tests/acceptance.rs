//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use usat::algorithms::{run_algorithm_u, ChoicePolicy, RunConfig};
use usat::counterexamples::{
    instance_u, instance_u_blocks, instance_u_witness, refutation_d, refutation_d_loop, refutation_u,
    run_refutation,
};
use usat::io::{emit_dimacs, fuzz_differential, parse_dimacs, DisagreementKind, FuzzConfig, FuzzReport};
use usat::model::{Formula, Literal, Mark, Var};
use usat::oracle::{brute_force_sat, check_iff_claim, enumerate_defined};
use usat::reduction::{gadget_forces_true, reduce_with, GeneralClause, ReductionOptions};

const SEED: u64 = 2024;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn literal(var: u32, positive: bool) -> Literal {
    if positive { Var::new(var).positive() } else { Var::new(var).negative() }
}

fn random_formula(rng: &mut ChaCha8Rng, max_vars: u32, max_clauses: usize) -> Formula {
    let n = rng.random_range(3..=max_vars);
    let m = rng.random_range(0..=max_clauses);
    let clauses = (0..m)
        .map(|_| {
            let vars = sample(rng, n as usize, 3);
            std::array::from_fn(|i| literal(vars.index(i) as u32 + 1, rng.random_bool(0.5)))
        })
        .collect();
    Formula::new(n, clauses).unwrap()
}

fn random_general(rng: &mut ChaCha8Rng, max_vars: u32, max_clauses: usize) -> (u32, Vec<GeneralClause>) {
    let n = rng.random_range(1..=max_vars);
    let m = rng.random_range(0..=max_clauses);
    let clauses = (0..m)
        .map(|_| GeneralClause::new(std::array::from_fn(|_| literal(rng.random_range(1..=n), rng.random_bool(0.5)))))
        .collect();
    (n, clauses)
}

fn general_satisfiable(n: u32, clauses: &[GeneralClause]) -> bool {
    (0u32..1 << n).any(|bits| {
        clauses
            .iter()
            .all(|c| c.literals.iter().any(|l| (bits >> (l.var().index() - 1) & 1 == 1) == l.is_positive()))
    })
}

fn within(limit: Duration, start: Instant) -> (bool, String) {
    let took = start.elapsed();
    (took <= limit, format!("{took:.2?} (limit {limit:?})"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let verdict = match run_refutation(&refutation_d()) {
        Ok(v) => v,
        Err(e) => return outcome(false, e.to_string()),
    };
    let (fast, time) = within(Duration::from_secs(60), start);
    outcome(
        verdict.confirmed && verdict.outcome == "success" && fast,
        format!("outcome {}, {}, {time}", verdict.outcome, verdict.oracle_finding),
    )
}

fn criterion_2() -> Outcome {
    match run_refutation(&refutation_d_loop()) {
        Ok(v) => outcome(
            v.confirmed && v.outcome == "cycle_detected" && v.steps <= 10_000,
            format!("outcome {} after {} steps (limit 10000)", v.outcome, v.steps),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let verdict = match run_refutation(&refutation_u()) {
        Ok(v) => v,
        Err(e) => return outcome(false, e.to_string()),
    };
    let f = instance_u();
    let sat = brute_force_sat(&f).map(|r| r.satisfiable).unwrap_or(false);
    let witness = f.eval(&instance_u_witness());
    let (fast, time) = within(Duration::from_secs(5), start);
    outcome(
        verdict.confirmed && verdict.outcome == "fail" && sat && witness && fast,
        format!(
            "outcome {}, brute force satisfiable {sat}, witness satisfies all {} clauses {witness}, {time}",
            verdict.outcome,
            f.len()
        ),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let blocks = instance_u_blocks();
    let counts: Vec<u64> = blocks
        .iter()
        .map(|b| enumerate_defined(&b.formula, Some((b.head, Mark::Free))).unwrap().defined_count.unwrap())
        .collect();
    let (fast, time) = within(Duration::from_secs(1), start);

    // Variable-disjoint union: defined understandings are exactly the
    // products of the parts, with or without a head constraint.
    let count = |f: &Formula, c| enumerate_defined(f, c).unwrap().defined_count.unwrap();
    let mut product_ok = true;
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let (a, b) = (&blocks[i], &blocks[j]);
            let shift = |l: Literal| literal(l.var().index() + 3, l.is_positive());
            let mut clauses = a.formula.triples();
            clauses.extend(b.formula.triples().into_iter().map(|c| c.map(shift)));
            let union = Formula::new(6, clauses).unwrap();
            product_ok &= count(&union, None) == count(&a.formula, None) * count(&b.formula, None);
            product_ok &= count(&union, Some((a.head, Mark::Free)))
                == count(&a.formula, Some((a.head, Mark::Free))) * count(&b.formula, None);
            product_ok &= count(&union, Some((shift(b.head), Mark::Free)))
                == count(&a.formula, None) * count(&b.formula, Some((b.head, Mark::Free)));
        }
    }
    outcome(
        counts.iter().all(|&c| c == 0) && product_ok && fast,
        format!("head-free counts {counts:?}, product decomposition {product_ok}, {time}"),
    )
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    let mut sat = 0;
    // Under seven clauses every instance is satisfiable, so a second batch
    // with more clauses exercises the unsatisfiable side.
    for (batch, max_clauses) in [(0, 6), (1, 16)] {
        for i in 0..200 {
            let f = random_formula(&mut rng, 4, max_clauses);
            sat += brute_force_sat(&f).unwrap().satisfiable as usize;
            if !check_iff_claim(&f).unwrap() {
                failures.push((batch, i));
            }
        }
    }
    let (fast, time) = within(Duration::from_secs(60), start);
    outcome(
        failures.is_empty() && fast,
        format!(
            "200 instances with ≤6 clauses plus 200 with ≤16 ({sat} of 400 satisfiable), \
             iff failures {failures:?}, {time}"
        ),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    let mut replacements = 0;
    let mut checked = 0;
    for i in 0..200 {
        let (n, clauses) = random_general(&mut rng, 5, 8);
        let input_sat = general_satisfiable(n, &clauses);
        // One gadget per replacement can exceed the brute-force cap; the
        // shared variant never needs more than two gadgets.
        let mut ok = true;
        for share_gadgets in [false, true] {
            let r = reduce_with(n, &clauses, ReductionOptions { share_gadgets });
            if !share_gadgets {
                replacements += r.replacements;
            }
            ok &= r.output.clauses().iter().all(|c| {
                let vars: BTreeSet<Var> = c.literals().iter().map(|l| l.var()).collect();
                vars.len() == 3
            });
            ok &= r.within_size_bound();
            ok &= r.gadgets.iter().all(|g| gadget_forces_true(&g.clauses(), g.forced));
            match brute_force_sat(&r.output) {
                Ok(out) => {
                    checked += 1;
                    ok &= out.satisfiable == input_sat;
                }
                Err(_) => ok &= !share_gadgets,
            }
        }
        if !ok {
            bad.push(i);
        }
    }
    let (fast, time) = within(Duration::from_secs(30), start);
    outcome(
        bad.is_empty() && fast,
        format!("200 instances, {replacements} replacements, {checked} outputs brute-forced, failing {bad:?}, {time}"),
    )
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let cfg = FuzzConfig {
        seed: SEED,
        instances: 1000,
        artifact_dir: Some(dir.path().to_path_buf()),
        ..FuzzConfig::default()
    };
    let report = match fuzz_differential(&cfg) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let again = match fuzz_differential(&FuzzConfig { artifact_dir: None, ..cfg.clone() }) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let strip = |r: &FuzzReport| {
        let mut r = r.clone();
        r.disagreements.iter_mut().for_each(|d| d.artifact = None);
        r
    };
    let deterministic = strip(&report) == strip(&again);

    let defined_on_unsat = report.count(DisagreementKind::DefinedOnUnsat);
    // Normal terminations whose understanding fails the audit.
    let malformed = report.count(DisagreementKind::Malformed);
    let wrong_fails: Vec<_> =
        report.disagreements.iter().filter(|d| d.kind == DisagreementKind::WrongFail).collect();
    let archived = wrong_fails.iter().all(|d| {
        d.artifact
            .as_ref()
            .and_then(|p| fs::read_to_string(p).ok())
            .is_some_and(|text| parse_dimacs(&text).is_ok() && text == d.shrunk_dimacs)
    });
    let (fast, time) = within(Duration::from_secs(600), start);
    outcome(
        defined_on_unsat == 0 && report.audit_failures == 0 && malformed == 0 && archived && deterministic && fast,
        format!(
            "seed {SEED}: {} satisfiable, {} unsatisfiable; defined on unsat {defined_on_unsat}, \
             normal returns failing is_defined {malformed}, wrong fails {} (archived {archived}), \
             deterministic {deterministic}, {time}",
            report.satisfiable,
            report.unsatisfiable,
            wrong_fails.len(),
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut traces_equal = true;
    for _ in 0..50 {
        let f = random_formula(&mut rng, 7, 20);
        let policy = ChoicePolicy::SeededRandom(rng.random());
        let run = || {
            let r = run_algorithm_u(&f, policy.clone(), RunConfig::recording()).unwrap();
            (r.outcome, r.trace.to_jsonl())
        };
        traces_equal &= run() == run();
    }
    for build in [refutation_d, refutation_d_loop, refutation_u] {
        let (a, b) = (run_refutation(&build()).unwrap(), run_refutation(&build()).unwrap());
        traces_equal &= a.trace.to_jsonl() == b.trace.to_jsonl();
    }
    let mut round_trip_failures = 0;
    for _ in 0..500 {
        let f = random_formula(&mut rng, 12, 40);
        if parse_dimacs(&emit_dimacs(&f)).ok() != Some(f) {
            round_trip_failures += 1;
        }
    }
    outcome(
        traces_equal && round_trip_failures == 0,
        format!("byte-identical traces {traces_equal}, parse∘emit failures {round_trip_failures}/500"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 Algorithm D wrong success", criterion_1),
        ("2 Algorithm D nontermination", criterion_2),
        ("3 Algorithm U wrong fail", criterion_3),
        ("4 blockwise impossibility", criterion_4),
        ("5 iff claim at desk scale", criterion_5),
        ("6 duplicate-removal reduction", criterion_6),
        ("7 soundness direction under fuzzing", criterion_7),
        ("8 determinism and round trip", criterion_8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += !o.pass as usize;
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
