//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("extension degree {0} out of range (2..=30)")]
    DegreeOutOfRange(u32),

    #[error("modulus {got:#x} is not monic of degree {expected}")]
    BadModulusDegree { expected: u32, got: u64 },

    #[error("modulus {modulus:#x} is reducible (factor of degree {factor_degree})")]
    ReducibleModulus { modulus: u64, factor_degree: u32 },

    #[error("multiplicative inverse of zero")]
    ZeroInverse,

    #[error("operation requires an even extension degree, n = {0}")]
    OddDegree(u32),

    #[error("element {0:#x} does not lie in the subfield")]
    NotInSubfield(u32),

    #[error("polar decomposition is undefined at zero")]
    ZeroDecompose,

    #[error("{a} is not invertible modulo {modulus} (gcd = {gcd})")]
    NotCoprime { a: u64, modulus: u64, gcd: u64 },

    #[error("gcd(k, m) = gcd({k}, {m}) = {gcd}, expected 1")]
    GcdKm { m: u64, k: u64, gcd: u64 },

    #[error("gcd(2^k+1, 2^m+1) = gcd({pk}, {pm}) = {gcd}, expected 1")]
    GcdPow { pk: u64, pm: u64, gcd: u64 },

    #[error("exponent {0} is congruent to 0 modulo 2^n - 1")]
    DegenerateExponent(u64),

    #[error("field degree {n} exceeds the naive-BCT limit {limit}; use the fiber algorithm")]
    FieldTooLarge { n: u32, limit: u32 },

    #[error("theta {0:#x} lies in the subfield")]
    ThetaInSubfield(u32),

    #[error("gcd(r, n) = gcd({r}, {n}) = {gcd}, expected 1")]
    GcdRn { r: u32, n: u32, gcd: u64 },

    #[error("b must lie outside F_2 (got {0:#x})")]
    BInF2(u32),

    #[error("survey parameter m = {0} out of range (2..=10)")]
    SurveyRange(u32),

    #[error("invalid parameter: {0}")]
    Parameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
