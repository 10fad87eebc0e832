use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {0} exceeds the supported maximum 2^16")]
    FieldTooLarge(u64),
    #[error("modulus is not monic of degree {expected}")]
    BadModulus { expected: usize },
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("degree {delta} is not divisible by n-k = {nk}")]
    DegreeDivisibility { delta: usize, nk: usize },
    #[error("expected {expected} coefficient matrices, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("operation requires a rate 1/2 code (n=2, k=1)")]
    UnsupportedRate,
    #[error("window index {j} exceeds L = {l}")]
    WindowIndexTooLarge { j: usize, l: usize },
    #[error("linear system is inconsistent: received symbols do not match any codeword")]
    InconsistentSystem,
    #[error("search space has {0} candidates, exceeding the guard of 10^8")]
    SearchSpaceTooLarge(u128),
    #[error("column distance instance too large: {0} prefixes exceed the guard of 10^7")]
    InstanceTooLarge(u128),
    #[error("H_0 has no invertible (n-k) x (n-k) submatrix")]
    NoParityPivot,
    #[error("cannot terminate the codeword: no zero-steering tail found")]
    NoTermination,
    #[error("invalid erasure pattern: {0}")]
    BadPattern(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("family parameter out of range: {0}")]
    FamilyParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
