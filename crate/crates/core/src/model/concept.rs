//! Concepts, the concept store C̃ and the defined-ness predicate.
//!
//! A concept is the pair of literals that keep `focus` company in one
//! clause. Its type is read off the live understanding every time it is
//! asked for: `Star` when a sibling is marked `t`, `Plus` otherwise.
//! Identity is structural, `(clause, focus)`, and never depends on marks.

use std::collections::HashSet;

use serde::Serialize;

use super::formula::{Clause, ClauseId, Formula};
use super::literal::{all_literals, Literal};
use super::understanding::{Mark, Understanding};

/// Identity of a concept: the clause it comes from and its focus literal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ConceptKey {
    pub clause: ClauseId,
    pub focus: Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Concept {
    pub clause: ClauseId,
    pub focus: Literal,
    pub siblings: [Literal; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConceptType {
    /// Some sibling is marked `t`.
    Star,
    /// No sibling is marked `t`.
    Plus,
}

/// Classification of a set of concepts such as C̃[λ].
///
/// `Empty` is kept apart from `Star` only so that change detection notices
/// insertions; for classification an empty set is of type C̃* and not C̃⁺.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SetType {
    Empty,
    Star,
    Plus,
}

impl SetType {
    /// Type C̃⁺: at least one member of type `Plus`.
    pub fn is_plus(self) -> bool {
        matches!(self, SetType::Plus)
    }

    /// Type C̃*: every member of type `Star` (vacuously true when empty).
    pub fn is_star(self) -> bool {
        !self.is_plus()
    }
}

impl Concept {
    pub fn key(&self) -> ConceptKey {
        ConceptKey { clause: self.clause, focus: self.focus }
    }

    pub fn concept_type(&self, u: &Understanding) -> ConceptType {
        if self.siblings.iter().any(|&s| u.get(s) == Mark::True) {
            ConceptType::Star
        } else {
            ConceptType::Plus
        }
    }

    pub fn is_plus(&self, u: &Understanding) -> bool {
        self.concept_type(u) == ConceptType::Plus
    }
}

/// The concept of `lit` in `clause`, or `None` when `lit` is not in it.
pub fn concept_of(lit: Literal, clause: &Clause) -> Option<Concept> {
    let lits = clause.literals();
    let pos = lits.iter().position(|&l| l == lit)?;
    let mut siblings = lits.iter().enumerate().filter(|&(i, _)| i != pos).map(|(_, &l)| l);
    Some(Concept {
        clause: clause.id(),
        focus: lit,
        siblings: [siblings.next().unwrap(), siblings.next().unwrap()],
    })
}

/// Outcome of the defined-understanding case table for one literal.
///
/// `own` is the type of C̃[λ]; `negative_nonempty` says whether C̃[λ]⁻ has a
/// member, which is the same as C̃[¬λ] being of type C̃⁺. The f case takes
/// priority over "C̃[λ] is empty", so a literal that never occurs but whose
/// negation is needed is marked `f`. Returns `None` for the omitted case.
pub fn dictated_mark(own: SetType, negative_nonempty: bool) -> Option<Mark> {
    match (own.is_plus(), negative_nonempty) {
        (false, false) => Some(Mark::Free),
        (true, false) => Some(Mark::True),
        (false, true) => Some(Mark::False),
        (true, true) => None,
    }
}

/// The set C̃ of concepts with the indexed view C̃[λ].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptStore {
    num_vars: u32,
    concepts: Vec<Concept>,
    keys: HashSet<ConceptKey>,
    by_focus: Vec<Vec<usize>>,
    by_sibling: Vec<Vec<usize>>,
}

impl ConceptStore {
    pub fn new(num_vars: u32) -> Self {
        let slots = 2 * num_vars as usize;
        ConceptStore {
            num_vars,
            concepts: Vec::new(),
            keys: HashSet::new(),
            by_focus: vec![Vec::new(); slots],
            by_sibling: vec![Vec::new(); slots],
        }
    }

    /// Every concept of every literal of `formula`, in clause order.
    pub fn full(formula: &Formula) -> Self {
        let mut store = ConceptStore::new(formula.num_vars());
        for clause in formula.clauses() {
            store.insert_clause(clause);
        }
        store
    }

    pub fn insert_clause(&mut self, clause: &Clause) {
        for l in clause.literals() {
            self.insert(concept_of(l, clause).expect("literal of its own clause"));
        }
    }

    /// Adds a concept; returns false if one with the same identity exists.
    pub fn insert(&mut self, concept: Concept) -> bool {
        if !self.keys.insert(concept.key()) {
            return false;
        }
        let idx = self.concepts.len();
        self.by_focus[concept.focus.index()].push(idx);
        for s in concept.siblings {
            self.by_sibling[s.index()].push(idx);
        }
        self.concepts.push(concept);
        true
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn contains(&self, key: ConceptKey) -> bool {
        self.keys.contains(&key)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Concept> {
        self.concepts.iter()
    }

    /// C̃[λ]: the concepts whose focus is `lit`, in insertion order.
    pub fn focused_on(&self, lit: Literal) -> impl Iterator<Item = &Concept> {
        self.by_focus[lit.index()].iter().map(move |&i| &self.concepts[i])
    }

    /// Concepts in which `lit` is one of the two siblings.
    pub fn containing(&self, lit: Literal) -> impl Iterator<Item = &Concept> {
        self.by_sibling[lit.index()].iter().map(move |&i| &self.concepts[i])
    }

    pub fn set_type(&self, lit: Literal, u: &Understanding) -> SetType {
        let mut any = false;
        for c in self.focused_on(lit) {
            if c.is_plus(u) {
                return SetType::Plus;
            }
            any = true;
        }
        if any {
            SetType::Star
        } else {
            SetType::Empty
        }
    }

    /// Set types of every literal, in canonical order.
    pub fn set_types(&self, u: &Understanding) -> Vec<SetType> {
        all_literals(self.num_vars).map(|l| self.set_type(l, u)).collect()
    }

    /// C̃[λ]⁻: the `Plus` concepts of C̃[¬λ], sorted by identity.
    pub fn negative_concepts(&self, lit: Literal, u: &Understanding) -> Vec<Concept> {
        let mut out: Vec<Concept> =
            self.focused_on(!lit).filter(|c| c.is_plus(u)).copied().collect();
        out.sort_by_key(Concept::key);
        out
    }

    /// The mark the case table dictates for `lit`, `None` if undefined.
    pub fn dictated_mark(&self, lit: Literal, u: &Understanding) -> Option<Mark> {
        dictated_mark(self.set_type(lit, u), self.set_type(!lit, u).is_plus())
    }
}

/// C̃[λ]⁻ as a free function.
pub fn negative_concepts(lit: Literal, store: &ConceptStore, u: &Understanding) -> Vec<Concept> {
    store.negative_concepts(lit, u)
}

/// True iff every literal carries exactly the mark the case table dictates
/// and no literal falls into the omitted case.
pub fn is_defined(u: &Understanding, store: &ConceptStore) -> bool {
    debug_assert_eq!(u.num_vars(), store.num_vars());
    all_literals(store.num_vars()).all(|l| store.dictated_mark(l, u) == Some(u.get(l)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Formula;

    fn lit(v: i64) -> Literal {
        Literal::from_dimacs(v).unwrap()
    }

    #[test]
    fn concept_of_reports_siblings() {
        let f = Formula::from_dimacs(3, &[[1, 2, 3]]).unwrap();
        let c = concept_of(lit(1), &f.clauses()[0]).unwrap();
        assert_eq!(c.focus, lit(1));
        assert_eq!(c.siblings, [lit(2), lit(3)]);
        assert!(concept_of(lit(-1), &f.clauses()[0]).is_none());
    }

    #[test]
    fn concept_types() {
        let f = Formula::from_dimacs(3, &[[1, 2, 3]]).unwrap();
        let c = concept_of(lit(1), &f.clauses()[0]).unwrap();
        let u = |a, b| Understanding::from_pairs(3, [(lit(2), a), (lit(3), b)]);
        assert_eq!(c.concept_type(&u(Mark::True, Mark::Free)), ConceptType::Star);
        assert_eq!(c.concept_type(&u(Mark::False, Mark::Free)), ConceptType::Plus);
        assert_eq!(c.concept_type(&u(Mark::False, Mark::False)), ConceptType::Plus);
    }

    #[test]
    fn empty_set_is_star_not_plus() {
        assert!(SetType::Empty.is_star());
        assert!(!SetType::Empty.is_plus());
        let store = ConceptStore::new(2);
        assert_eq!(store.set_type(lit(1), &Understanding::all_free(2)), SetType::Empty);
    }

    #[test]
    fn negative_concepts_filters_plus() {
        let f = Formula::from_dimacs(3, &[[1, 2, 3]]).unwrap();
        let store = ConceptStore::full(&f);
        let u = Understanding::all_free(3);
        // C̃[¬x] is empty, so C̃[x]⁻ is empty.
        assert!(store.negative_concepts(lit(1), &u).is_empty());
        // C̃[¬(¬x)] = C̃[x] holds one Plus concept.
        assert_eq!(store.negative_concepts(lit(-1), &u).len(), 1);
        let star = Understanding::from_pairs(3, [(lit(2), Mark::True)]);
        assert!(store.negative_concepts(lit(-1), &star).is_empty());
    }

    #[test]
    fn single_clause_definedness() {
        let f = Formula::from_dimacs(3, &[[1, 2, 3]]).unwrap();
        let store = ConceptStore::full(&f);
        let good = Understanding::from_pairs(3, [(lit(1), Mark::True), (lit(-1), Mark::False)]);
        assert!(is_defined(&good, &store));
        let all_true = Understanding::from_pairs(
            3,
            [(lit(1), Mark::True), (lit(2), Mark::True), (lit(3), Mark::True)],
        );
        assert!(!is_defined(&all_true, &store));
    }

    #[test]
    fn omitted_case_is_undefined() {
        // (x ∨ a ∨ b) ∧ (¬x ∨ c ∨ d), all free.
        let f = Formula::from_dimacs(5, &[[1, 2, 3], [-1, 4, 5]]).unwrap();
        let store = ConceptStore::full(&f);
        assert_eq!(store.dictated_mark(lit(1), &Understanding::all_free(5)), None);
    }

    #[test]
    fn insert_is_idempotent_by_identity() {
        let f = Formula::from_dimacs(3, &[[1, 2, 3]]).unwrap();
        let mut store = ConceptStore::new(3);
        let c = concept_of(lit(2), &f.clauses()[0]).unwrap();
        assert!(store.insert(c));
        assert!(!store.insert(c));
        assert_eq!(store.len(), 1);
        assert_eq!(store.containing(lit(1)).count(), 1);
        assert_eq!(store.focused_on(lit(2)).count(), 1);
    }
}
