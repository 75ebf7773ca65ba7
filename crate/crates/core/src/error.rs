use thiserror::Error;

/// Errors reported by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("frequencies must be pairwise distinct, got {0:?}")]
    RepeatedFrequency([i64; 3]),
    #[error("modulus {index} must be strictly positive and finite, got {value}")]
    NonPositiveModulus { index: usize, value: f64 },
    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },
    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: u64, b: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(
        "derivative does not change sign on [{lo}, {hi}]: f'({lo}) = {dlo}, f'({hi}) = {dhi}"
    )]
    BracketFailure { lo: f64, hi: f64, dlo: f64, dhi: f64 },
    #[error("no trinomial attains its maximum modulus at the given points with the given values")]
    NoSolution,
    #[error("the two points and values lead to a singular linear system")]
    SingularConfiguration,
    #[error("point is not on the unit sphere: sup norm is {0}")]
    NotNormalized(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
