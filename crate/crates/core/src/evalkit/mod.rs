//! Samples, empirical distributions, sample generation and D1 distances.

mod distance;
mod generate;
mod sample;

pub use distance::{
    d1_on_support, d1_on_support_with, d1_truncated, d1_truncated_with, Series, SeriesCursor,
};
pub use generate::{random_pa, sample_from, PaSampler, STOP_FLOOR};
pub use sample::{EmpiricalDistribution, Sample};
