//! Multiplicity automata: data model, text format and per-automaton analyses.

mod analysis;
mod format;
mod ma;
mod word;

pub use analysis::{
    evaluate_prefix, is_pda, is_pseudo_stochastic, reduce, series_sum, tail_masses, trim,
    validate_pa, PslCertificate, PA_TOL, RANK_TOL, SERIES_TOTAL_TOL,
};
pub(crate) use format::parse_header;
pub use format::parse_number;
pub use ma::{AutomatonBuilder, TransKey, WeightedAutomaton};
pub use word::{Alphabet, Symbol, Word};
