use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use usat::algorithms::{
    run_algorithm_u, Budget, ChoicePolicy, ChoiceScript, RunConfig, RunOutcome, Trace,
};
use usat::counterexamples::{run_refutation, Refutation, RefutationName};
use usat::io::{
    emit_dimacs_with_comments, emit_understanding, fuzz_differential, parse_dimacs_general,
    parse_understanding, Dialect, DedupeMode, DimacsDocument, FuzzConfig, FuzzError, PolicyKind,
};
use usat::model::{all_literals, is_defined, ConceptStore, Mark};
use usat::oracle::{Oracle, OracleError};
use usat::reduction::{reduce_with, ReductionOptions};

const EXIT_FOUND: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "usat", version, about = "Understanding-based 3-SAT procedures, oracles and refutations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Fifo,
    Random,
    Script,
}

#[derive(Clone, Copy, ValueEnum)]
enum RefuteArg {
    D,
    DLoop,
    U,
}

#[derive(Clone, Copy, ValueEnum)]
enum DedupeArg {
    Reject,
    Reduce,
}

#[derive(Subcommand)]
enum Command {
    /// Run Algorithm Ũ on a strict DIMACS file.
    Solve {
        formula: PathBuf,
        #[arg(long, value_enum, default_value = "fifo")]
        policy: PolicyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Choice script, required with --policy script.
        #[arg(long)]
        script: Option<PathBuf>,
        /// Maximum trace steps.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Write the JSONL trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the decisions of this run as a script.
        #[arg(long)]
        save_script: Option<PathBuf>,
    },
    /// Brute-force satisfiability and defined-understanding queries.
    Oracle {
        formula: PathBuf,
        /// Print a satisfying assignment.
        #[arg(long)]
        witness: bool,
        /// Count defined understandings.
        #[arg(long)]
        enumerate_defined: bool,
        /// Only count understandings marking this literal free (name or integer).
        #[arg(long, value_name = "LIT", allow_hyphen_values = true)]
        free: Option<String>,
    },
    /// Remove repeated variables from a general 3-CNF file.
    Reduce {
        formula: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Reuse forcing gadgets across clauses.
        #[arg(long)]
        share_gadgets: bool,
    },
    /// Reproduce a refutation and print its verdict.
    Refute {
        #[arg(value_enum)]
        which: RefuteArg,
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Replace the frozen script.
        #[arg(long)]
        script: Option<PathBuf>,
    },
    /// Differential fuzzing of Algorithm Ũ against brute force.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, default_value_t = 3)]
        min_vars: u32,
        #[arg(long, default_value_t = 7)]
        max_vars: u32,
        #[arg(long, default_value_t = 1)]
        min_clauses: usize,
        #[arg(long, default_value_t = 30)]
        max_clauses: usize,
        #[arg(long, value_enum, default_value = "random")]
        policy: PolicyArg,
        #[arg(long, value_enum, default_value = "reject")]
        dedupe: DedupeArg,
        /// Also run the thirteen-clause instance under its adversarial script.
        #[arg(long)]
        known_counterexample: bool,
        /// Directory for shrunk DIMACS artifacts.
        #[arg(long)]
        artifacts: Option<PathBuf>,
        /// Write the full report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check an understanding file against a formula.
    CheckDefined { formula: PathBuf, understanding: PathBuf },
}

/// Error with its exit code.
struct Failure(u8, String);

impl Failure {
    fn input(msg: impl ToString) -> Self {
        Failure(EXIT_INPUT, msg.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load(path: &Path, dialect: Dialect) -> Result<DimacsDocument, Failure> {
    DimacsDocument::parse(&read(path)?, dialect)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_script(path: &Path) -> Result<ChoiceScript, Failure> {
    read(path)?.parse().map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_trace(path: Option<&PathBuf>, trace: &Trace) -> Result<(), Failure> {
    match path {
        Some(p) => write(p, &trace.to_jsonl()),
        None => Ok(()),
    }
}

fn oracle_failure(e: OracleError) -> Failure {
    Failure(EXIT_BUDGET, e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Solve { formula, policy, seed, script, budget, trace, save_script } => {
            let f = load(&formula, Dialect::Strict)?.to_formula();
            let policy = match (policy, script) {
                (PolicyArg::Fifo, _) => ChoicePolicy::Fifo,
                (PolicyArg::Random, _) => ChoicePolicy::SeededRandom(seed),
                (PolicyArg::Script, Some(p)) => ChoicePolicy::Scripted(load_script(&p)?),
                (PolicyArg::Script, None) => return Err(Failure::input("--policy script needs --script")),
            };
            let config = RunConfig {
                budget: Budget { max_steps: budget, ..Budget::default() },
                record_trace: trace.is_some(),
                ..RunConfig::default()
            };
            let report = run_algorithm_u(&f, policy, config).map_err(Failure::input)?;
            write_trace(trace.as_ref(), &report.trace)?;
            if let Some(p) = save_script {
                write(&p, &report.script().to_text())?;
            }
            println!("outcome: {} after {} steps", report.outcome.name(), report.steps);
            if let Some(u) = report.outcome.understanding() {
                print!("{}", emit_understanding(u));
            }
            Ok(match report.outcome {
                RunOutcome::BudgetExhausted | RunOutcome::CycleDetected => EXIT_BUDGET,
                _ => 0,
            })
        }

        Command::Oracle { formula, witness, enumerate_defined, free } => {
            let doc = load(&formula, Dialect::Strict)?;
            let f = doc.to_formula();
            let oracle = Oracle::default();
            let sat = oracle.brute_force_sat(&f).map_err(oracle_failure)?;
            println!("satisfiable: {}", sat.satisfiable);
            if witness {
                if let Some(w) = &sat.witness {
                    let names = doc.names();
                    let line: Vec<String> = f
                        .variables()
                        .map(|v| {
                            let name = names.get(&v.index()).cloned().unwrap_or_else(|| v.to_string());
                            format!("{name}={}", if w.value(v) { "T" } else { "F" })
                        })
                        .collect();
                    println!("witness: {}", line.join(" "));
                }
            }
            if enumerate_defined || free.is_some() {
                let constraint = match &free {
                    Some(tok) => Some((
                        doc.resolve_literal(tok).ok_or_else(|| Failure::input(format!("unknown literal {tok}")))?,
                        Mark::Free,
                    )),
                    None => None,
                };
                let r = oracle.enumerate_defined(&f, constraint).map_err(oracle_failure)?;
                let count = r.defined_count.unwrap_or(0);
                match &free {
                    Some(tok) => println!("defined understandings with {tok} free: {count}"),
                    None => println!("defined understandings: {count}"),
                }
                if let Some(u) = &r.free_witness {
                    println!("first:");
                    print!("{}", emit_understanding(u));
                }
            }
            Ok(0)
        }

        Command::Reduce { formula, output, share_gadgets } => {
            let (n, clauses) = parse_dimacs_general(&read(&formula)?)
                .map_err(|e| Failure::input(format!("{}: {e}", formula.display())))?;
            let r = reduce_with(n, &clauses, ReductionOptions { share_gadgets });
            let comments = vec![
                format!("reduced from {} clauses over {} variables", r.input_clauses, r.input_vars),
                format!("removed tautologies {}", r.removed_tautologies),
                format!("replacements {}", r.replacements),
                format!("gadgets {}", r.gadgets_added),
            ];
            let text = emit_dimacs_with_comments(&r.output, &comments);
            match output {
                Some(p) => write(&p, &text)?,
                None => print!("{text}"),
            }
            eprintln!(
                "{} -> {} clauses, {} tautologies removed, {} gadgets",
                r.input_clauses,
                r.output.len(),
                r.removed_tautologies,
                r.gadgets_added
            );
            Ok(0)
        }

        Command::Refute { which, trace, script } => {
            let name = match which {
                RefuteArg::D => RefutationName::AlgorithmDWrongSuccess,
                RefuteArg::DLoop => RefutationName::AlgorithmDNontermination,
                RefuteArg::U => RefutationName::AlgorithmUWrongFail,
            };
            let mut refutation = Refutation::by_name(name);
            if let Some(p) = script {
                refutation.script = load_script(&p)?;
            }
            let verdict = run_refutation(&refutation).map_err(|e| Failure(EXIT_BUDGET, e.to_string()))?;
            write_trace(trace.as_ref(), &verdict.trace)?;
            println!("{verdict}");
            println!("trace digest: {}", verdict.trace.digest());
            Ok(if verdict.confirmed { 0 } else { EXIT_FOUND })
        }

        Command::Fuzz {
            seed,
            instances,
            min_vars,
            max_vars,
            min_clauses,
            max_clauses,
            policy,
            dedupe,
            known_counterexample,
            artifacts,
            report,
        } => {
            let mut cfg = FuzzConfig {
                seed,
                instances,
                variables: min_vars..=max_vars,
                clauses: min_clauses..=max_clauses,
                policy: match policy {
                    PolicyArg::Fifo => PolicyKind::Fifo,
                    PolicyArg::Random => PolicyKind::Random,
                    PolicyArg::Script => return Err(Failure::input("fuzzing takes fifo or random")),
                },
                dedupe: match dedupe {
                    DedupeArg::Reject => DedupeMode::RejectDuplicates,
                    DedupeArg::Reduce => DedupeMode::ReduceFirst,
                },
                artifact_dir: artifacts,
                ..FuzzConfig::default()
            };
            if known_counterexample {
                cfg = cfg.with_known_counterexample();
            }
            let r = fuzz_differential(&cfg).map_err(|e| match e {
                FuzzError::Io { .. } => Failure::input(e),
                FuzzError::Config(_) | FuzzError::Cap { .. } => Failure(EXIT_BUDGET, e.to_string()),
            })?;
            if let Some(p) = report {
                let json = serde_json::to_string_pretty(&r).expect("report serializes");
                write(&p, &json)?;
            }
            println!("{r}");
            Ok(if r.disagreements.is_empty() { 0 } else { EXIT_FOUND })
        }

        Command::CheckDefined { formula, understanding } => {
            let f = load(&formula, Dialect::Strict)?.to_formula();
            let u = parse_understanding(&read(&understanding)?, f.num_vars())
                .map_err(|e| Failure::input(format!("{}: {e}", understanding.display())))?;
            let store = ConceptStore::full(&f);
            let defined = is_defined(&u, &store);
            println!("defined: {defined}");
            if !defined {
                let wrong: BTreeSet<String> = all_literals(f.num_vars())
                    .filter(|&l| store.dictated_mark(l, &u) != Some(u.get(l)))
                    .map(|l| {
                        let want = store.dictated_mark(l, &u).map_or("undefined".to_string(), |m| m.token().to_string());
                        format!("{} is {} but the table gives {want}", l.to_dimacs(), u.get(l).token())
                    })
                    .collect();
                for w in wrong {
                    println!("  {w}");
                }
            }
            Ok(if defined { 0 } else { EXIT_FOUND })
        }
    }
}
