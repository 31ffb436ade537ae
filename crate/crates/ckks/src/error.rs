use thiserror::Error;

#[derive(Debug, Error)]
pub enum CkksError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error(transparent)]
    Ring(#[from] credence_ring::RingError),

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(usize, usize),

    #[error("scale mismatch: {0} vs {1}")]
    ScaleMismatch(f64, f64),

    #[error("no Galois key for rotation step {0}")]
    MissingGaloisKey(usize),

    #[error("modulus chain exhausted: cannot rescale below level 0")]
    LevelExhausted,

    #[error("input has {len} values but only {slots} slots are available")]
    SlotOverflow { len: usize, slots: usize },

    #[error("input contains a non-finite value at index {0}")]
    NonFiniteInput(usize),

    #[error("encoded coefficient magnitude 2^{0:.1} overflows the level-{1} modulus")]
    EncodingOverflow(f64, usize),

    #[error("sum width {0} not coverable by the rotation schedule")]
    BadSumWidth(usize),

    #[error(transparent)]
    Serialize(#[from] SerializeError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SerializeError {
    #[error("bad magic bytes (expected HEV1)")]
    BadMagic,

    #[error("unsupported format version {0}")]
    UnsupportedVersion(u8),

    #[error("unexpected payload kind {got} (expected {expected})")]
    WrongKind { expected: u8, got: u8 },

    #[error("byte stream truncated at offset {0}")]
    Truncated(usize),

    #[error("trailing garbage after payload")]
    TrailingBytes,

    #[error("inconsistent payload: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, CkksError>;
