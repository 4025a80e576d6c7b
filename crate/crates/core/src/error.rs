use thiserror::Error;

/// Errors raised by argument validation across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {p} must be an odd integer >= 3")]
    InvalidModulus { p: u64 },

    #[error("modulus {p} exceeds the supported cap of 2^31")]
    ModulusTooLarge { p: u64 },

    #[error("{p} = {factor}\u{b7}{} is not prime", p / factor)]
    NotPrime { p: u64, factor: u64 },

    #[error("k = {k} is outside [1, {}] for modulus {p}", (p - 1) / 2)]
    KOutOfRange { p: u64, k: u64 },

    #[error("binomial top index {n} is outside the table range of modulus {p}")]
    OutOfTable { n: u64, p: u64 },

    #[error("invalid range [{lo}, {hi}]: {reason}")]
    InvalidRange {
        lo: u64,
        hi: u64,
        reason: &'static str,
    },

    #[error("denominator must be nonzero")]
    ZeroDenominator,

    #[error("malformed rational {0:?}, expected \"num/den\"")]
    MalformedRational(String),

    #[error("trial count must be at least 1")]
    NoTrials,
}

pub type Result<T> = std::result::Result<T, Error>;
