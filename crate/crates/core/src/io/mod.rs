//! File formats and the differential fuzzer.

pub mod dimacs;
pub mod fuzz;
pub mod understanding_doc;

pub use dimacs::{
    emit_dimacs, emit_dimacs_with_comments, emit_general, name_comments, parse_dimacs,
    parse_dimacs_general, Dialect, DimacsDocument, DimacsError, DimacsErrorKind,
};
pub use fuzz::{
    fuzz_differential, CorpusEntry, DedupeMode, Disagreement, DisagreementKind, FuzzConfig,
    FuzzError, FuzzReport, PolicyKind,
};
pub use understanding_doc::{emit_understanding, parse_understanding, UnderstandingDocError};
