//! The two refutation instances and the understanding tables that go with
//! them, with named variables.

use crate::model::{Formula, Literal, Mark, Understanding, Var};

/// Variable names of [`instance_d`], indexed by `var - 1`.
pub const INSTANCE_D_NAMES: [&str; 7] = ["a", "b", "c", "d", "e", "x", "y"];

/// Variable names of [`instance_u`], indexed by `var - 1`.
pub const INSTANCE_U_NAMES: [&str; 9] = ["x", "a", "b", "y", "c", "d", "z", "e", "f"];

/// Resolves `"x"` or `"¬x"` / `"-x"` against a name table.
pub fn named(names: &[&str], token: &str) -> Option<Literal> {
    let (neg, name) = match token.strip_prefix('¬').or_else(|| token.strip_prefix('-')) {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    let idx = names.iter().position(|&n| n == name)?;
    let var = Var::new(idx as u32 + 1);
    Some(if neg { var.negative() } else { var.positive() })
}

/// Renders a literal with its variable name.
pub fn display_named(names: &[&str], lit: Literal) -> String {
    let name = names
        .get(lit.var().index() as usize - 1)
        .map(|s| s.to_string())
        .unwrap_or_else(|| lit.var().to_string());
    if lit.is_positive() {
        name
    } else {
        format!("¬{name}")
    }
}

fn build(names: &[&str], clauses: &[[&str; 3]]) -> Formula {
    let lits = clauses
        .iter()
        .map(|c| c.map(|t| named(names, t).expect("known variable")))
        .collect();
    Formula::new(names.len() as u32, lits).expect("duplicate-free instance")
}

fn table(names: &[&str], entries: &[(&str, Mark)]) -> Understanding {
    Understanding::from_pairs(
        names.len() as u32,
        entries.iter().map(|&(t, m)| (named(names, t).expect("known literal"), m)),
    )
}

/// The eight-clause instance on which Algorithm D answers wrongly.
pub fn instance_d() -> Formula {
    build(
        &INSTANCE_D_NAMES,
        &[
            ["a", "b", "c"],
            ["a", "¬b", "c"],
            ["a", "b", "¬c"],
            ["a", "¬b", "¬c"],
            ["¬x", "y", "¬a"],
            ["¬x", "¬y", "¬a"],
            ["d", "y", "e"],
            ["¬d", "¬y", "¬e"],
        ],
    )
}

/// The thirteen-clause satisfiable instance on which Algorithm Ũ can fail.
pub fn instance_u() -> Formula {
    build(
        &INSTANCE_U_NAMES,
        &[
            ["x", "a", "b"],
            ["x", "¬a", "b"],
            ["¬x", "a", "¬b"],
            ["¬x", "¬a", "¬b"],
            ["y", "c", "d"],
            ["y", "¬c", "d"],
            ["¬y", "c", "¬d"],
            ["¬y", "¬c", "¬d"],
            ["z", "e", "f"],
            ["z", "¬e", "f"],
            ["¬z", "e", "¬f"],
            ["¬z", "¬e", "¬f"],
            ["x", "y", "z"],
        ],
    )
}

/// One four-clause block of [`instance_u`], renumbered onto its own three
/// variables with the head as variable 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UBlock {
    pub head: Literal,
    pub formula: Formula,
    /// Names of the block's variables, indexed by `var - 1`.
    pub names: [&'static str; 3],
}

/// The three variable-disjoint blocks of [`instance_u`], heads x, y, z.
pub fn instance_u_blocks() -> Vec<UBlock> {
    let full = instance_u();
    (0..3u32)
        .map(|b| {
            let offset = 3 * b;
            let clauses = full.clauses()[4 * b as usize..4 * b as usize + 4]
                .iter()
                .map(|c| {
                    c.literals().map(|l| {
                        let v = Var::new(l.var().index() - offset);
                        if l.is_positive() { v.positive() } else { v.negative() }
                    })
                })
                .collect();
            let o = offset as usize;
            UBlock {
                head: Var::new(1).positive(),
                formula: Formula::new(3, clauses).expect("block is duplicate-free"),
                names: [INSTANCE_U_NAMES[o], INSTANCE_U_NAMES[o + 1], INSTANCE_U_NAMES[o + 2]],
            }
        })
        .collect()
}

/// Satisfying assignment of [`instance_u`], indexed by `var - 1`.
pub fn instance_u_witness() -> Vec<bool> {
    // x a b y c d z e f
    vec![true, true, false, true, true, false, true, true, false]
}

use Mark::{False as F, Free as E, True as T};

/// Starting understanding for the Algorithm D run on [`instance_d`].
pub fn initial_table_d() -> Understanding {
    table(
        &INSTANCE_D_NAMES,
        &[
            ("a", T),
            ("¬a", F),
            ("b", E),
            ("¬b", E),
            ("c", E),
            ("¬c", E),
            ("d", F),
            ("¬d", T),
            ("e", E),
            ("¬e", E),
            ("x", F),
            ("¬x", T),
            ("y", T),
            ("¬y", F),
        ],
    )
}

/// Expected result of the nested call that frees ¬y (protecting x).
pub fn recursive_table_d() -> Understanding {
    table(
        &INSTANCE_D_NAMES,
        &[
            ("a", T),
            ("¬a", F),
            ("d", F),
            ("¬d", T),
            ("e", T),
            ("¬e", F),
            ("x", F),
            ("¬x", T),
            ("y", E),
            ("¬y", E),
        ],
    )
}

/// Expected witness of Algorithm G making ¬y true.
pub fn g_witness_table_d() -> Understanding {
    table(
        &INSTANCE_D_NAMES,
        &[
            ("a", T),
            ("¬a", F),
            ("d", T),
            ("¬d", F),
            ("e", E),
            ("¬e", E),
            ("x", F),
            ("¬x", T),
            ("y", F),
            ("¬y", T),
        ],
    )
}
