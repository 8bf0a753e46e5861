use std::fmt;

use thiserror::Error;

use super::literal::{Literal, Var};
use super::understanding::{Mark, Understanding};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("clause {clause} mentions variable {var} more than once")]
    DuplicateVariable { clause: usize, var: Var },
    #[error("clause {clause} uses variable {var} but the formula has {num_vars} variables")]
    VariableOutOfRange { clause: usize, var: Var, num_vars: u32 },
}

/// Position of a clause inside its formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct ClauseId(pub usize);

impl fmt::Display for ClauseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A duplicate-free disjunction of exactly three literals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    id: ClauseId,
    literals: [Literal; 3],
}

impl Clause {
    pub fn new(id: ClauseId, literals: [Literal; 3]) -> Result<Self, FormulaError> {
        let [a, b, c] = literals;
        for (p, q) in [(a, b), (a, c), (b, c)] {
            if p.var() == q.var() {
                return Err(FormulaError::DuplicateVariable { clause: id.0, var: p.var() });
            }
        }
        Ok(Clause { id, literals })
    }

    pub fn id(&self) -> ClauseId {
        self.id
    }

    pub fn literals(&self) -> [Literal; 3] {
        self.literals
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.literals.contains(&lit)
    }

    pub fn mentions(&self, var: Var) -> bool {
        self.literals.iter().any(|l| l.var() == var)
    }

    /// A clause is satisfied when one of its literals is marked `t`.
    pub fn is_satisfied(&self, u: &Understanding) -> bool {
        self.literals.iter().any(|&l| u.get(l) == Mark::True)
    }

    /// Evaluates the clause under a total boolean assignment indexed by
    /// `var - 1`.
    pub fn eval(&self, values: &[bool]) -> bool {
        self.literals
            .iter()
            .any(|l| values[l.var().index() as usize - 1] == l.is_positive())
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.literals;
        write!(f, "({a} ∨ {b} ∨ {c})")
    }
}

pub fn clause_satisfied(clause: &Clause, u: &Understanding) -> bool {
    clause.is_satisfied(u)
}

/// A duplicate-free 3-CNF instance over variables `1..=num_vars`.
///
/// Clause ids are dense: clause `i` has id `ClauseId(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formula {
    num_vars: u32,
    clauses: Vec<Clause>,
}

impl Formula {
    pub fn new(num_vars: u32, clauses: Vec<[Literal; 3]>) -> Result<Self, FormulaError> {
        let clauses = clauses
            .into_iter()
            .enumerate()
            .map(|(i, lits)| {
                for l in lits {
                    if l.var().index() > num_vars {
                        return Err(FormulaError::VariableOutOfRange {
                            clause: i,
                            var: l.var(),
                            num_vars,
                        });
                    }
                }
                Clause::new(ClauseId(i), lits)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Formula { num_vars, clauses })
    }

    /// Builds a formula sized to the largest variable mentioned.
    pub fn from_clauses(clauses: Vec<[Literal; 3]>) -> Result<Self, FormulaError> {
        let num_vars = clauses
            .iter()
            .flatten()
            .map(|l| l.var().index())
            .max()
            .unwrap_or(0);
        Formula::new(num_vars, clauses)
    }

    /// Convenience constructor from signed DIMACS integers.
    ///
    /// Panics on zero literals; meant for literals written in source.
    pub fn from_dimacs(num_vars: u32, clauses: &[[i64; 3]]) -> Result<Self, FormulaError> {
        let lits = clauses
            .iter()
            .map(|c| c.map(|v| Literal::from_dimacs(v).expect("nonzero literal")))
            .collect();
        Formula::new(num_vars, lits)
    }

    pub fn empty() -> Self {
        Formula { num_vars: 0, clauses: Vec::new() }
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn variables(&self) -> impl Iterator<Item = Var> {
        (1..=self.num_vars).map(Var::new)
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause(&self, id: ClauseId) -> &Clause {
        &self.clauses[id.0]
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// The clauses mentioning `var` in either polarity, re-indexed densely.
    pub fn restrict_to_var(&self, var: Var) -> Formula {
        self.select(|c| c.mentions(var))
    }

    /// Keeps the clauses accepted by `keep`, renumbering ids densely.
    pub fn select(&self, mut keep: impl FnMut(&Clause) -> bool) -> Formula {
        let lits = self
            .clauses
            .iter()
            .filter(|c| keep(c))
            .map(|c| c.literals)
            .collect();
        Formula::new(self.num_vars, lits).expect("subset of a valid formula")
    }

    pub fn triples(&self) -> Vec<[Literal; 3]> {
        self.clauses.iter().map(|c| c.literals).collect()
    }

    /// Evaluates every clause under a boolean assignment indexed by `var - 1`.
    pub fn eval(&self, values: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.eval(values))
    }

    /// Ids of the clauses `u` satisfies.
    pub fn satisfied_by(&self, u: &Understanding) -> Vec<ClauseId> {
        self.clauses
            .iter()
            .filter(|c| c.is_satisfied(u))
            .map(Clause::id)
            .collect()
    }
}

/// Two understandings are equivalent when they satisfy the same clauses.
pub fn equivalent(u1: &Understanding, u2: &Understanding, formula: &Formula) -> bool {
    formula
        .clauses()
        .iter()
        .all(|c| c.is_satisfied(u1) == c.is_satisfied(u2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(v: i64) -> Literal {
        Literal::from_dimacs(v).unwrap()
    }

    #[test]
    fn rejects_duplicate_variables() {
        let err = Clause::new(ClauseId(0), [lit(1), lit(-1), lit(2)]).unwrap_err();
        assert_eq!(err, FormulaError::DuplicateVariable { clause: 0, var: Var::new(1) });
        assert!(Formula::from_dimacs(3, &[[1, 2, 2]]).is_err());
    }

    #[test]
    fn rejects_out_of_range_variables() {
        assert!(matches!(
            Formula::from_dimacs(2, &[[1, 2, 3]]),
            Err(FormulaError::VariableOutOfRange { .. })
        ));
    }

    #[test]
    fn clause_satisfaction() {
        let f = Formula::from_dimacs(3, &[[1, 2, 3]]).unwrap();
        let c = &f.clauses()[0];
        let mut u = Understanding::all_free(3);
        u.set(lit(1), Mark::True);
        assert!(clause_satisfied(c, &u));
        let mut all_false = Understanding::all_free(3);
        for v in 1..=3 {
            all_false.set(lit(v), Mark::False);
        }
        assert!(!clause_satisfied(c, &all_false));

        // (¬x ∨ y ∨ ¬a) with only ¬x true
        let g = Formula::from_dimacs(3, &[[-1, 2, -3]]).unwrap();
        let mut v = Understanding::all_free(3);
        v.set(lit(-1), Mark::True);
        assert!(clause_satisfied(&g.clauses()[0], &v));
    }

    #[test]
    fn equivalence_compares_satisfied_sets() {
        let f = Formula::from_dimacs(3, &[[1, 2, 3]]).unwrap();
        let mut u1 = Understanding::all_free(3);
        u1.set(lit(1), Mark::True);
        let mut u2 = Understanding::all_free(3);
        u2.set(lit(2), Mark::True);
        assert!(equivalent(&u1, &u1, &f));
        assert!(equivalent(&u1, &u2, &f));
        assert!(!equivalent(&u1, &Understanding::all_free(3), &f));
    }

    #[test]
    fn restrict_renumbers_densely() {
        let f = Formula::from_dimacs(4, &[[1, 2, 3], [2, 3, 4], [-1, 3, 4]]).unwrap();
        let r = f.restrict_to_var(Var::new(1));
        assert_eq!(r.len(), 2);
        assert_eq!(r.clauses()[1].id(), ClauseId(1));
        assert_eq!(r.clauses()[1].literals(), [lit(-1), lit(3), lit(4)]);
    }
}
