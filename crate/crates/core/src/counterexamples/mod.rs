//! The two refutation instances, their understanding tables, the frozen
//! choice scripts and the verdict logic.

mod instances;
mod refutation;
mod search;

pub use instances::*;
pub use refutation::*;
pub use search::*;
