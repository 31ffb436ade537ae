use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(usize, usize),

    #[error("operands are in different rings")]
    ContextMismatch,

    #[error("operation requires {expected:?}-domain input, got {actual:?}")]
    FormMismatch {
        expected: crate::poly::Form,
        actual: crate::poly::Form,
    },

    #[error("degree {0} is not a power of two (or is too small)")]
    BadDegree(usize),

    #[error("polynomial is already at the bottom of the modulus chain")]
    LevelExhausted,

    #[error("no {bits}-bit prime congruent to 1 mod {two_n} available")]
    NoNttPrime { bits: u32, two_n: u64 },

    #[error("{0} is not a valid NTT modulus for degree {1}")]
    BadModulus(u64, usize),

    #[error("automorphism exponent {0} must be odd and in 1..2N")]
    BadAutomorphism(usize),

    #[error("level {0} exceeds the modulus chain (max {1})")]
    BadLevel(usize, usize),
}

pub type Result<T> = std::result::Result<T, RingError>;
