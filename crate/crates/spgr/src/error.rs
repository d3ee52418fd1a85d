use thiserror::Error;

/// Errors surfaced by the library. Domain violations are reported, never
/// silently truncated or coerced.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator index {index} out of range for rank {rank} (valid: 0..={rank})")]
    LetterOutOfRange { index: usize, rank: usize },

    #[error("index {index} out of range (valid: {min}..={max})")]
    IndexOutOfRange { index: usize, min: usize, max: usize },

    #[error("length cap {cap} exceeded while computing an element of length > {cap}")]
    CapExceeded { cap: usize },

    #[error("element `{word}` is not Grassmannian")]
    NotGrassmannian { word: String },

    #[error("element `{word}` does not lie in the Bruhat ideal Z")]
    NotInZee { word: String },

    #[error("`{lower}` is not covered by `{upper}` in Bruhat order")]
    NotACover { lower: String, upper: String },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid partition {0:?}: {1}")]
    InvalidPartition(Vec<u32>, String),

    #[error("not a generalized Cartan matrix: {0}")]
    BadCartanMatrix(String),

    #[error("malformed word `{0}`")]
    BadWord(String),

    #[error("linear system failure: {0}")]
    LinearSolve(String),

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
