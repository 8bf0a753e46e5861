//! Problem instances, understandings and concepts.

mod concept;
mod formula;
mod literal;
mod understanding;

pub use concept::{
    concept_of, dictated_mark, is_defined, negative_concepts, Concept, ConceptKey, ConceptStore,
    ConceptType, SetType,
};
pub use formula::{clause_satisfied, equivalent, Clause, ClauseId, Formula, FormulaError};
pub use literal::{all_literals, Literal, Polarity, Var};
pub use understanding::{Mark, Understanding};
