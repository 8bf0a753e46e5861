//! Strict 3-CNF DIMACS.
//!
//! ```text
//! c name 1 x
//! p cnf 3 1
//! 1 -2 3 0
//! ```
//!
//! Every clause line holds exactly three nonzero literals followed by `0`.
//! Comment lines start with `c`; `c name <var> <name>` attaches a variable
//! name. In strict mode a clause may not mention a variable twice; general
//! mode accepts that (for the reducer).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::model::{Formula, Literal};
use crate::reduction::GeneralClause;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct DimacsError {
    pub line: usize,
    pub column: usize,
    pub kind: DimacsErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsErrorKind {
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("second header")]
    DuplicateHeader,
    #[error("clause before header")]
    ClauseBeforeHeader,
    #[error("expected an integer, found `{0}`")]
    BadToken(String),
    #[error("clause has {0} literals, expected 3")]
    WrongArity(usize),
    #[error("clause is not terminated by 0")]
    MissingTerminator,
    #[error("unexpected `{0}` after clause terminator")]
    TrailingGarbage(String),
    #[error("variable {var} outside 1..={num_vars}")]
    VariableOutOfRange { var: u64, num_vars: u32 },
    #[error("variable {0} appears twice in one clause")]
    DuplicateVariable(u32),
    #[error("header declares {declared} clauses, body has {found}")]
    ClauseCount { declared: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dialect {
    /// Duplicate-free clauses only.
    Strict,
    /// Repeated variables allowed.
    General,
}

/// A parsed document before conversion to a formula.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DimacsDocument {
    pub num_vars: u32,
    pub clauses: Vec<[Literal; 3]>,
    /// Comment lines without the leading `c` and one space.
    pub comments: Vec<String>,
}

impl DimacsDocument {
    pub fn parse(text: &str, dialect: Dialect) -> Result<Self, DimacsError> {
        parse(text, dialect)
    }

    /// Names from `c name <var> <name>` comments.
    pub fn names(&self) -> BTreeMap<u32, String> {
        self.comments
            .iter()
            .filter_map(|c| {
                let mut parts = c.split_whitespace();
                (parts.next()? == "name").then_some(())?;
                let var = parts.next()?.parse().ok()?;
                Some((var, parts.next()?.to_string()))
            })
            .collect()
    }

    /// Resolves a literal token given as a signed integer, or as a variable
    /// name with optional `-`/`¬` prefix.
    pub fn resolve_literal(&self, token: &str) -> Option<Literal> {
        if let Ok(v) = token.parse::<i64>() {
            return Literal::from_dimacs(v).filter(|l| l.var().index() <= self.num_vars);
        }
        let (neg, name) = match token.strip_prefix('-').or_else(|| token.strip_prefix('¬')) {
            Some(rest) => (true, rest),
            None => (false, token),
        };
        let (var, _) = self.names().into_iter().find(|(_, n)| n == name)?;
        let lit = Literal::from_dimacs(var as i64)?;
        Some(if neg { !lit } else { lit })
    }

    pub fn to_formula(&self) -> Formula {
        Formula::new(self.num_vars, self.clauses.clone()).expect("validated on parse")
    }

    pub fn to_general(&self) -> Vec<GeneralClause> {
        self.clauses.iter().copied().map(GeneralClause::new).collect()
    }
}

fn parse(text: &str, dialect: Dialect) -> Result<DimacsDocument, DimacsError> {
    let mut doc = DimacsDocument::default();
    let mut declared: Option<(usize, usize)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |column: usize, kind| Err(DimacsError { line, column, kind });
        let trimmed = raw.trim_start();
        let indent = raw.len() - trimmed.len();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed == "c" || trimmed.starts_with("c ") || trimmed.starts_with("c\t") {
            doc.comments.push(trimmed[1..].strip_prefix([' ', '\t']).unwrap_or("").to_string());
            continue;
        }
        let tokens = tokens(raw);
        if trimmed.starts_with('p') {
            if declared.is_some() {
                return err(indent + 1, DimacsErrorKind::DuplicateHeader);
            }
            let words: Vec<&str> = tokens.iter().map(|t| t.1).collect();
            let bad = |m: &str| DimacsErrorKind::MalformedHeader(m.to_string());
            if words.len() != 4 || words[0] != "p" || words[1] != "cnf" {
                return err(indent + 1, bad("expected `p cnf <vars> <clauses>`"));
            }
            let Ok(vars) = words[2].parse::<u32>() else {
                return err(tokens[2].0, bad("variable count is not a number"));
            };
            let Ok(count) = words[3].parse::<usize>() else {
                return err(tokens[3].0, bad("clause count is not a number"));
            };
            doc.num_vars = vars;
            declared = Some((count, line));
            continue;
        }
        if declared.is_none() {
            return err(indent + 1, DimacsErrorKind::ClauseBeforeHeader);
        }

        let mut lits = Vec::with_capacity(3);
        let mut terminated = false;
        for &(column, tok) in &tokens {
            if terminated {
                return err(column, DimacsErrorKind::TrailingGarbage(tok.to_string()));
            }
            let Ok(v) = tok.parse::<i64>() else {
                return err(column, DimacsErrorKind::BadToken(tok.to_string()));
            };
            if v == 0 {
                if lits.len() != 3 {
                    return err(column, DimacsErrorKind::WrongArity(lits.len()));
                }
                terminated = true;
                continue;
            }
            if lits.len() == 3 {
                return err(column, DimacsErrorKind::WrongArity(4));
            }
            if v.unsigned_abs() > doc.num_vars as u64 {
                return err(
                    column,
                    DimacsErrorKind::VariableOutOfRange { var: v.unsigned_abs(), num_vars: doc.num_vars },
                );
            }
            let lit = Literal::from_dimacs(v).expect("nonzero and in range");
            if dialect == Dialect::Strict && lits.iter().any(|l: &Literal| l.var() == lit.var()) {
                return err(column, DimacsErrorKind::DuplicateVariable(lit.var().index()));
            }
            lits.push(lit);
        }
        if !terminated {
            return err(raw.trim_end().len() + 1, DimacsErrorKind::MissingTerminator);
        }
        doc.clauses.push([lits[0], lits[1], lits[2]]);
    }
    let Some((count, header_line)) = declared else {
        return Err(DimacsError { line: 1, column: 1, kind: DimacsErrorKind::MissingHeader });
    };
    if count != doc.clauses.len() {
        return Err(DimacsError {
            line: header_line,
            column: 1,
            kind: DimacsErrorKind::ClauseCount { declared: count, found: doc.clauses.len() },
        });
    }
    Ok(doc)
}

/// Whitespace-separated tokens with their 1-based character columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, byte)),
            (true, Some((c, b))) => {
                out.push((c, &line[b..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((c, b)) = start {
        out.push((c, &line[b..]));
    }
    out
}

pub fn parse_dimacs(text: &str) -> Result<Formula, DimacsError> {
    Ok(parse(text, Dialect::Strict)?.to_formula())
}

/// Parses clauses that may repeat variables. Returns the declared variable
/// count with the clauses.
pub fn parse_dimacs_general(text: &str) -> Result<(u32, Vec<GeneralClause>), DimacsError> {
    let doc = parse(text, Dialect::General)?;
    Ok((doc.num_vars, doc.to_general()))
}

pub fn emit_dimacs(formula: &Formula) -> String {
    emit(formula.num_vars(), &formula.triples(), &[] as &[&str])
}

/// Emits with leading comment lines.
pub fn emit_dimacs_with_comments<S: AsRef<str>>(formula: &Formula, comments: &[S]) -> String {
    emit(formula.num_vars(), &formula.triples(), comments)
}

pub fn emit_general(num_vars: u32, clauses: &[GeneralClause]) -> String {
    let triples: Vec<[Literal; 3]> = clauses.iter().map(|c| c.literals).collect();
    emit(num_vars, &triples, &[] as &[&str])
}

/// `c name` comment lines for a name table indexed by `var - 1`.
pub fn name_comments(names: &[&str]) -> Vec<String> {
    names.iter().enumerate().map(|(i, n)| format!("name {} {n}", i + 1)).collect()
}

fn emit<S: AsRef<str>>(num_vars: u32, clauses: &[[Literal; 3]], comments: &[S]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str(&format!("c {}\n", c.as_ref()));
    }
    out.push_str(&format!("p cnf {num_vars} {}\n", clauses.len()));
    for [a, b, c] in clauses {
        out.push_str(&format!("{} {} {} 0\n", a.to_dimacs(), b.to_dimacs(), c.to_dimacs()));
    }
    out
}

impl fmt::Display for DimacsDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit(self.num_vars, &self.clauses, &self.comments))
    }
}
