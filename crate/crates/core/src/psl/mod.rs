//! The stochastic language `p_r` of a pseudo-stochastic series: evaluation,
//! sampling and the mass lost to pruning.

mod pr;
mod walk;

pub use pr::{
    nr_mass, pr_evaluate, pr_sample, NrMass, PrCursor, PrEvaluator, PrunedStep, MAX_SAMPLE_LEN,
};
pub use walk::{count_words, for_each_word, PrefixWalk, ENUMERATION_LIMIT};
