use thiserror::Error;

/// Errors raised by the arithmetic, field and verification layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: u64, b: u64 },

    #[error("cokernel is infinite (relation matrix has rank {rank} < {cols})")]
    InfiniteCokernel { rank: usize, cols: usize },

    #[error("invariant factor does not fit in 64 bits")]
    Overflow,

    #[error("modulus {0} is congruent to 2 mod 4; pass {half} instead", half = .0 / 2)]
    ModulusTwoModFour(u64),

    #[error("cannot parse field spec {input:?}: {reason}")]
    SpecParse { input: String, reason: String },

    #[error("field {0} is not CM")]
    NotCm(String),

    #[error("field {sub} is not contained in {sup}")]
    NotNested { sub: String, sup: String },

    #[error("trivial character has no B_1 value in this setting")]
    TrivialCharacter,

    #[error("prime {p} does not split in the base field of discriminant {disc}")]
    NotSplit { p: u64, disc: i64 },

    #[error("minus class number assembled to {value}, not a positive integer under Q = {q}")]
    QPolicy { value: String, q: u8 },

    #[error("claim not applicable: {0}")]
    NotApplicable(String),

    #[error("inconsistent base field invariants: {0}")]
    InconsistentInvariants(String),

    #[error("enumeration of {size} elements exceeds the cap {cap}")]
    EnumerationCap { size: u128, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
