use thiserror::Error;

/// Errors raised by the analyses, learners and file parsers of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("singular matrix: no pivot above tolerance in column {column}")]
    SingularMatrix { column: usize },

    #[error("eigenvalue iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("spectral radius estimate {estimate} is within the undecided band around 1")]
    Undecided { estimate: f64 },

    #[error("spectral radius of the letter-summed matrix is not below 1")]
    SpectralRadiusNotLtOne,

    #[error("automaton does not compute a pseudo-stochastic language")]
    NotPseudoStochastic,

    #[error("all clamped masses vanish at reachable prefix of length {prefix_len}")]
    DegenerateNormalizer { prefix_len: usize },

    #[error("generated word exceeded {cap} symbols")]
    LengthCapExceeded { cap: usize },

    #[error("enumeration of {count} words exceeds the limit of {limit}")]
    EnumerationTooLarge { count: f64, limit: f64 },

    #[error("residual of prefix of length {prefix_len} is undefined (zero prefix mass)")]
    ZeroPrefixMass { prefix_len: usize },

    #[error("state cap of {cap} exceeded")]
    StateCapExceeded { cap: usize },

    #[error("empty sample")]
    EmptySample,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
