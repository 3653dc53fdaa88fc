//! Exact arithmetic on finite integer sets.

mod analysis;
mod canonical;
mod intset;
mod literal;

pub use analysis::{analyze, analyze_within, AnalysisReport};
pub use canonical::{are_affinely_equivalent, canonicalize, CanonicalForm};
pub use intset::{IntSet, Universe, DEFAULT_UNIVERSE_BITS};
pub use literal::{parse_set, parse_set_lines};
