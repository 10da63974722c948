use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension {n} outside supported range {min}..={max}")]
    DimensionOutOfRange { n: usize, min: usize, max: usize },

    #[error("construction requires n ≡ 0 mod 4 (got n = {0})")]
    NotMultipleOfFour(usize),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("n = {0} is not of the form 4·p with p prime")]
    NotFourTimesPrime(usize),

    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("mask {mask:#x} does not fit in {n} coordinates")]
    MaskOutOfRange { mask: u128, n: usize },

    #[error("vertex with mask {0:#x} is not a member of M")]
    NotInM(u128),

    #[error("index {index} out of range for {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("duplicate entry {0}")]
    Duplicate(u128),

    #[error("vertices {0:#x} and {1:#x} are orthogonal")]
    NotOrthoFree(u128, u128),

    #[error("prime scan exceeded limit {0} without a counterexample")]
    ScanLimitExceeded(u64),

    #[error("invalid certificate: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
