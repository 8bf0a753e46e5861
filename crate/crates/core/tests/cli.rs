use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const GOLDEN_D: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/golden/instance_d.cnf");
const GOLDEN_U: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/golden/instance_u.cnf");

fn usat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_usat")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_writes_trace_and_replayable_script() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("run.jsonl");
    let script = dir.path().join("run.script");
    let o = usat(&[
        "solve", GOLDEN_U, "--policy", "random", "--seed", "7",
        "--trace", path(&trace), "--save-script", path(&script),
    ]);
    assert!(o.status.code().is_some_and(|c| c <= 1), "{o:?}");
    let first = fs::read_to_string(&trace).unwrap();
    assert!(first.lines().all(|l| l.starts_with("{\"step\":")));

    let replay = dir.path().join("replay.jsonl");
    let o2 = usat(&["solve", GOLDEN_U, "--policy", "script", "--script", path(&script), "--trace", path(&replay)]);
    assert_eq!(o.status.code(), o2.status.code());
    assert_eq!(stdout(&o), stdout(&o2));
    assert_eq!(first, fs::read_to_string(&replay).unwrap());
}

#[test]
fn solve_under_golden_script_fails() {
    let script = concat!(env!("CARGO_MANIFEST_DIR"), "/golden/script_u.txt");
    let o = usat(&["solve", GOLDEN_U, "--policy", "script", "--script", script]);
    assert!(stdout(&o).contains("fail"), "{}", stdout(&o));
}

#[test]
fn oracle_counts_free_x() {
    let o = usat(&["oracle", GOLDEN_D, "--enumerate-defined", "--free", "x"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("satisfiable: true"));
    assert!(stdout(&o).contains("x free: 0"));
}

#[test]
fn refutations_confirm() {
    for which in ["d", "d-loop", "u"] {
        let o = usat(&["refute", which]);
        assert_eq!(o.status.code(), Some(0), "{which}");
        assert!(stdout(&o).contains("CONFIRMED"), "{which}");
    }
}

#[test]
fn reduce_then_solve() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("general.cnf");
    let output = dir.path().join("reduced.cnf");
    fs::write(&input, "p cnf 2 2\n1 1 2 0\n-1 2 1 0\n").unwrap();

    // Repeated variables are rejected by the strict reader.
    assert_eq!(usat(&["solve", path(&input)]).status.code(), Some(2));

    let o = usat(&["reduce", path(&input), "-o", path(&output)]);
    assert_eq!(o.status.code(), Some(0));
    let reduced = fs::read_to_string(&output).unwrap();
    assert!(reduced.contains("p cnf 5 5"), "{reduced}");
    assert_eq!(usat(&["oracle", path(&output)]).status.code(), Some(0));
}

#[test]
fn check_defined_accepts_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.cnf");
    let good = dir.path().join("good.txt");
    let bad = dir.path().join("bad.txt");
    fs::write(&f, "p cnf 3 1\n1 2 3 0\n").unwrap();
    fs::write(&good, "1 t\n-1 f\n2 e\n-2 e\n3 e\n-3 e\n").unwrap();
    fs::write(&bad, "1 e\n-1 e\n2 e\n-2 e\n3 e\n-3 e\n").unwrap();
    assert_eq!(usat(&["check-defined", path(&f), path(&good)]).status.code(), Some(0));
    assert_eq!(usat(&["check-defined", path(&f), path(&bad)]).status.code(), Some(1));
}

#[test]
fn fuzz_archives_disagreements() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let artifacts = dir.path().join("artifacts");
    let o = usat(&[
        "fuzz", "--seed", "3", "--instances", "40", "--known-counterexample",
        "--artifacts", path(&artifacts), "--report", path(&report),
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let listed = json["disagreements"].as_array().unwrap();
    assert!(!listed.is_empty());
    assert_eq!(fs::read_dir(&artifacts).unwrap().count(), listed.len());
}

#[test]
fn malformed_input_exits_with_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.cnf");
    fs::write(&f, "p cnf 2 1\n1 x 2 0\n").unwrap();
    let o = usat(&["solve", path(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}
