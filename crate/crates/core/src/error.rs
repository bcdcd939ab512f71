use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPerm(String),

    #[error("invalid k-permutation: {0}")]
    InvalidKPerm(String),

    #[error("degree {0} exceeds the supported maximum of 255 points")]
    DegreeTooLarge(usize),

    #[error("empty generator list")]
    NoGenerators,

    /// Closure or enumeration stopped at the element cap; use a certificate-based path.
    #[error("element cap of {cap} exceeded; use a certificate-based path instead of enumeration")]
    CapExceeded { cap: usize },

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("group is not enumerated")]
    NotEnumerated,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("index {index} out of range for {count} vertices")]
    OutOfRange { index: u64, count: u64 },

    #[error("self-loop query on vertex {0}")]
    SelfLoop(String),

    #[error("unsupported 6-cycle pattern: {0}")]
    UnsupportedPattern(String),

    #[error("permutation does not lie in the stabilizer subgroup permuting 2..=k: {0}")]
    NotInStabilizerFactor(String),

    #[error("reducible modulus {0:?}")]
    ReducibleModulus(Vec<u32>),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("embedded generator data failed verification: {0}")]
    Verification(String),

    #[error("witness rejected: {0}")]
    WitnessRejected(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("malformed certificate: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
