//! Crate-wide error type. Every domain violation listed in the module
//! contracts maps to one variant here; the CLI turns them into exit code 1.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be nonzero")]
    ZeroModulus,

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("{0} is not congruent to 1 mod 4")]
    NotOneModFour(String),

    #[error("operation requires an odd prime, got 2")]
    EvenPrime,

    #[error("residue {residue} must be smaller than modulus {modulus}")]
    ResidueOutOfRange { residue: u64, modulus: u64 },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("sector bounds invalid: theta1 = {theta1}, theta2 = {theta2}")]
    InvalidSector { theta1: f64, theta2: f64 },

    #[error("limit {0} is below the smallest admissible value {1}")]
    LimitTooSmall(u64, u64),

    #[error("histogram needs at least 2 bins, got {0}")]
    TooFewBins(usize),

    #[error("under-sampled: expected count per bin is {0:.3}, need at least 5")]
    UnderSampled(f64),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("sample {value} lies outside [{lo}, {hi}]")]
    SampleOutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("empty or inverted range [{lo}, {hi}]")]
    EmptyRange { lo: f64, hi: f64 },

    #[error("benchmark grid invalid: {0}")]
    BadBenchGrid(String),

    #[error("least-squares fit needs at least 3 points, each with R >= 100")]
    TooFewFitPoints,

    #[error("radius must be a finite nonnegative number, got {0}")]
    BadRadius(f64),

    #[error("value {0} does not fit the enumeration range of this operation")]
    ValueTooLarge(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
