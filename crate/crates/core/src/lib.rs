pub mod automata;
pub mod baselines;
pub mod dees;
pub mod error;
pub mod evalkit;
pub mod experiment;
pub mod numkit;
pub mod psl;
pub mod rng;

pub use error::{Error, Result};
