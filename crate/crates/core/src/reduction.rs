//! Reduction from 3-SAT with repeated variables to the duplicate-free form.
//!
//! Clauses holding both `x` and `¬x` are dropped. Every other repeated
//! occurrence is replaced by `¬a` for a fresh `a`, and four clauses over
//! fresh `a, b, c` force `a` true, so `¬a` contributes nothing.

use std::collections::BTreeSet;
use std::fmt;

use crate::model::{Formula, Literal, Var};

/// A three-literal clause that may mention a variable more than once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneralClause {
    pub literals: [Literal; 3],
}

impl GeneralClause {
    pub fn new(literals: [Literal; 3]) -> Self {
        GeneralClause { literals }
    }

    pub fn from_dimacs(values: [i64; 3]) -> Option<Self> {
        let [a, b, c] = values;
        Some(GeneralClause::new([
            Literal::from_dimacs(a)?,
            Literal::from_dimacs(b)?,
            Literal::from_dimacs(c)?,
        ]))
    }

    /// Holds some variable in both polarities.
    pub fn is_tautology(&self) -> bool {
        let l = self.literals;
        (0..3).any(|i| (i + 1..3).any(|j| l[i] == !l[j]))
    }

    /// Position of the first literal whose variable already appeared earlier.
    pub fn repeated_position(&self) -> Option<usize> {
        let l = self.literals;
        (1..3).find(|&j| (0..j).any(|i| l[i].var() == l[j].var()))
    }

    pub fn is_duplicate_free(&self) -> bool {
        self.repeated_position().is_none()
    }

    pub fn max_var(&self) -> u32 {
        self.literals.iter().map(|l| l.var().index()).max().unwrap_or(0)
    }
}

impl fmt::Display for GeneralClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.literals;
        write!(f, "({a} ∨ {b} ∨ {c})")
    }
}

/// Four clauses over fresh `a, b, c` whose models all set `a` true.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gadget {
    pub forced: Var,
    pub helpers: [Var; 2],
}

impl Gadget {
    pub fn clauses(&self) -> [[Literal; 3]; 4] {
        let a = self.forced.positive();
        let [b, c] = self.helpers.map(Var::positive);
        [[a, b, c], [a, b, !c], [a, !b, c], [a, !b, !c]]
    }

    pub fn forces_true(&self) -> bool {
        gadget_forces_true(&self.clauses(), self.forced)
    }
}

/// Every model of `clauses` (over the variables they mention) sets `forced`
/// true. Decided by enumerating all assignments of those variables.
pub fn gadget_forces_true(clauses: &[[Literal; 3]], forced: Var) -> bool {
    let mut vars: BTreeSet<Var> = clauses.iter().flatten().map(|l| l.var()).collect();
    vars.insert(forced);
    let vars: Vec<Var> = vars.into_iter().collect();
    let pos = |v: Var| vars.iter().position(|&w| w == v).unwrap();
    let target = pos(forced);
    (0u32..1 << vars.len()).all(|bits| {
        let value = |l: &Literal| (bits >> pos(l.var()) & 1 == 1) == l.is_positive();
        let model = clauses.iter().all(|c| c.iter().any(value));
        !model || bits >> target & 1 == 1
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReductionOptions {
    /// Reuse gadgets across clauses instead of building one per
    /// replacement. A clause needing two replacements still gets two
    /// distinct forced variables.
    pub share_gadgets: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub output: Formula,
    pub input_vars: u32,
    pub input_clauses: usize,
    pub removed_tautologies: usize,
    /// Repeated occurrences replaced by a negated forced variable.
    pub replacements: usize,
    pub gadgets_added: usize,
    pub gadgets: Vec<Gadget>,
    pub fresh_variables: Vec<Var>,
}

impl ReductionReport {
    /// Output clause count stays within input + 4 per replacement.
    pub fn within_size_bound(&self) -> bool {
        self.output.len() <= self.input_clauses + 4 * self.replacements
    }
}

pub fn reduce_to_duplicate_free(num_vars: u32, clauses: &[GeneralClause]) -> ReductionReport {
    reduce_with(num_vars, clauses, ReductionOptions::default())
}

/// Reduces `clauses` over at least `num_vars` variables. Fresh variables
/// are numbered consecutively above the largest input variable.
pub fn reduce_with(
    num_vars: u32,
    clauses: &[GeneralClause],
    options: ReductionOptions,
) -> ReductionReport {
    let input_vars = clauses.iter().map(GeneralClause::max_var).fold(num_vars, u32::max);
    let mut next = input_vars;
    let mut gadgets: Vec<Gadget> = Vec::new();
    let mut fresh = |gadgets: &mut Vec<Gadget>| {
        let g = Gadget {
            forced: Var::new(next + 1),
            helpers: [Var::new(next + 2), Var::new(next + 3)],
        };
        next += 3;
        gadgets.push(g);
        g
    };

    let mut kept = Vec::new();
    let mut removed_tautologies = 0;
    let mut replacements = 0;
    for clause in clauses {
        if clause.is_tautology() {
            removed_tautologies += 1;
            continue;
        }
        let mut clause = *clause;
        let mut used = 0;
        while let Some(j) = clause.repeated_position() {
            let g = if options.share_gadgets && used < gadgets.len() {
                gadgets[used]
            } else {
                fresh(&mut gadgets)
            };
            used += 1;
            clause.literals[j] = g.forced.negative();
            replacements += 1;
        }
        kept.push(clause.literals);
    }
    kept.extend(gadgets.iter().flat_map(Gadget::clauses));

    let fresh_variables =
        gadgets.iter().flat_map(|g| [g.forced, g.helpers[0], g.helpers[1]]).collect();
    ReductionReport {
        output: Formula::new(next, kept).expect("reduced clauses are duplicate-free"),
        input_vars,
        input_clauses: clauses.len(),
        removed_tautologies,
        replacements,
        gadgets_added: gadgets.len(),
        gadgets,
        fresh_variables,
    }
}
