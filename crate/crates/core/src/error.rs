use thiserror::Error;

use crate::exact::RatPoly;

#[derive(Debug, Error)]
pub enum Error {
    #[error("moduli differ")]
    ModulusMismatch,

    #[error("element is not invertible; gcd with modulus is {gcd:?}")]
    NotInvertible { gcd: RatPoly },

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("both numerator and denominator vanish at the evaluation point")]
    Indeterminate,

    #[error("root finding failed: found {found} distinct roots, expected {expected}")]
    RootFindingFailed { found: usize, expected: usize },

    #[error("orbit matching ambiguous at point {index}")]
    OrbitMatchingAmbiguous { index: usize },

    #[error("no periodic point matches the image of point {index}")]
    OrbitMatchingFailed { index: usize },

    #[error("non-integral orbit count at n = {n}")]
    NonIntegralCount { n: u64 },

    #[error("precision exhausted at iterate {step}")]
    PrecisionExhausted { step: usize },

    #[error("exact iterate exceeded {cap_bits} bits at step {step}")]
    ExactBlowup { step: usize, cap_bits: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("argument out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
