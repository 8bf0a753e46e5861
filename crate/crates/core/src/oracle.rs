//! Exact brute-force ground truth.
//!
//! Satisfiability is decided by enumerating all `2^n` assignments. Defined
//! understandings are counted by enumerating all `3^(2n)` mark maps and
//! checking each against the case table with a flat-array implementation
//! that shares no code with [`crate::model::is_defined`].

use thiserror::Error;

use crate::model::{Formula, Literal, Mark, Understanding, Var};

/// Largest variable count for the `2^n` assignment search.
pub const SAT_VAR_CAP: u32 = 24;
/// Largest variable count for the `3^(2n)` understanding search.
pub const DEFINED_VAR_CAP: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{vars} variables exceed the oracle cap of {cap}")]
    CapExceeded { vars: u32, cap: u32 },
}

/// A total boolean assignment, indexed by `var - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn num_vars(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn value(&self, var: Var) -> bool {
        self.values[var.index() as usize - 1]
    }

    /// A literal is true when its polarity matches its variable's value.
    pub fn literal(&self, lit: Literal) -> bool {
        self.value(lit.var()) == lit.is_positive()
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn satisfies(&self, formula: &Formula) -> bool {
        formula.eval(&self.values)
    }

    /// Truncates to the first `num_vars` variables.
    pub fn restrict(&self, num_vars: u32) -> Assignment {
        Assignment { values: self.values[..num_vars as usize].to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OracleReport {
    /// For assignment search: the formula is satisfiable. For understanding
    /// enumeration: some defined understanding matches the constraint.
    pub satisfiable: bool,
    pub witness: Option<Assignment>,
    pub defined_count: Option<u64>,
    /// First matching defined understanding in enumeration order.
    pub free_witness: Option<Understanding>,
}

/// Oracle entry points with configurable caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub sat_cap: u32,
    pub defined_cap: u32,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { sat_cap: SAT_VAR_CAP, defined_cap: DEFINED_VAR_CAP }
    }
}

impl Oracle {
    pub fn brute_force_sat(&self, formula: &Formula) -> Result<OracleReport, OracleError> {
        let witness = self.first_model(formula.num_vars(), &formula.triples())?;
        Ok(OracleReport {
            satisfiable: witness.is_some(),
            witness,
            ..OracleReport::default()
        })
    }

    /// First satisfying assignment of arbitrary three-literal clauses, in
    /// binary counting order with variable 1 as the low bit. Duplicate
    /// variables inside a clause are evaluated natively.
    pub fn first_model(
        &self,
        num_vars: u32,
        clauses: &[[Literal; 3]],
    ) -> Result<Option<Assignment>, OracleError> {
        if num_vars > self.sat_cap {
            return Err(OracleError::CapExceeded { vars: num_vars, cap: self.sat_cap });
        }
        // Each clause as (mask of its variables, bits that make it true).
        let masks: Vec<Vec<(u32, u32)>> = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|l| {
                        let bit = 1u32 << (l.var().index() - 1);
                        (bit, if l.is_positive() { bit } else { 0 })
                    })
                    .collect()
            })
            .collect();
        for bits in 0..(1u64 << num_vars) {
            let bits = bits as u32;
            if masks.iter().all(|c| c.iter().any(|&(m, want)| bits & m == want)) {
                let values = (0..num_vars).map(|i| bits >> i & 1 == 1).collect();
                return Ok(Some(Assignment::new(values)));
            }
        }
        Ok(None)
    }

    pub fn enumerate_defined(
        &self,
        formula: &Formula,
        constraint: Option<(Literal, Mark)>,
    ) -> Result<OracleReport, OracleError> {
        let n = formula.num_vars();
        if n > self.defined_cap {
            return Err(OracleError::CapExceeded { vars: n, cap: self.defined_cap });
        }
        let table = CaseTable::new(formula);
        let slots = 2 * n as usize;
        let fixed = constraint.map(|(l, m)| (l.index(), encode(m)));
        let mut marks = vec![FREE; slots];
        if let Some((i, m)) = fixed {
            marks[i] = m;
        }
        let mut count = 0u64;
        let mut first = None;
        loop {
            if table.is_defined(&marks) {
                count += 1;
                if first.is_none() {
                    first = Some(decode(&marks));
                }
            }
            // Odometer: the last literal in canonical order turns fastest.
            let mut pos = slots;
            loop {
                if pos == 0 {
                    return Ok(OracleReport {
                        satisfiable: count > 0,
                        witness: None,
                        defined_count: Some(count),
                        free_witness: first,
                    });
                }
                pos -= 1;
                if fixed.is_some_and(|(i, _)| i == pos) {
                    continue;
                }
                if marks[pos] < FALSE {
                    marks[pos] += 1;
                    break;
                }
                marks[pos] = FREE;
            }
        }
    }

    pub fn check_iff_claim(&self, formula: &Formula) -> Result<bool, OracleError> {
        let sat = self.brute_force_sat(formula)?.satisfiable;
        let defined = self.enumerate_defined(formula, None)?.defined_count.unwrap_or(0) > 0;
        Ok(sat == defined)
    }
}

pub fn brute_force_sat(formula: &Formula) -> Result<OracleReport, OracleError> {
    Oracle::default().brute_force_sat(formula)
}

pub fn enumerate_defined(
    formula: &Formula,
    constraint: Option<(Literal, Mark)>,
) -> Result<OracleReport, OracleError> {
    Oracle::default().enumerate_defined(formula, constraint)
}

/// Satisfiability agrees with the existence of a defined understanding.
pub fn check_iff_claim(formula: &Formula) -> Result<bool, OracleError> {
    Oracle::default().check_iff_claim(formula)
}

// Enumeration order of marks: ε < t < f.
const FREE: u8 = 0;
const TRUE: u8 = 1;
const FALSE: u8 = 2;
const UNDEFINED: u8 = 3;

fn encode(m: Mark) -> u8 {
    match m {
        Mark::Free => FREE,
        Mark::True => TRUE,
        Mark::False => FALSE,
    }
}

fn decode(marks: &[u8]) -> Understanding {
    Understanding::from_marks(
        marks
            .iter()
            .map(|&m| match m {
                FREE => Mark::Free,
                TRUE => Mark::True,
                _ => Mark::False,
            })
            .collect(),
    )
}

/// Sibling slot pairs of every concept, grouped by focus slot.
struct CaseTable {
    siblings: Vec<Vec<(usize, usize)>>,
}

impl CaseTable {
    fn new(formula: &Formula) -> Self {
        let mut siblings = vec![Vec::new(); 2 * formula.num_vars() as usize];
        for clause in formula.clauses() {
            let [a, b, c] = clause.literals().map(Literal::index);
            siblings[a].push((b, c));
            siblings[b].push((a, c));
            siblings[c].push((a, b));
        }
        CaseTable { siblings }
    }

    /// Some concept focused on `slot` has no sibling marked `t`.
    fn has_plus(&self, marks: &[u8], slot: usize) -> bool {
        self.siblings[slot]
            .iter()
            .any(|&(p, q)| marks[p] != TRUE && marks[q] != TRUE)
    }

    fn is_defined(&self, marks: &[u8]) -> bool {
        (0..marks.len()).all(|slot| {
            let own = self.has_plus(marks, slot);
            let negative = self.has_plus(marks, slot ^ 1);
            let want = match (own, negative) {
                (false, false) => FREE,
                (true, false) => TRUE,
                (false, true) => FALSE,
                (true, true) => UNDEFINED,
            };
            marks[slot] == want
        })
    }
}
