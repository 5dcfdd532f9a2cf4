use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("generator index {index} out of range for rank {n}")]
    InvalidGenerator { index: usize, n: usize },

    #[error("not an involution: {0}")]
    NotAnInvolution(String),

    #[error("rank {n} exceeds the cap {cap} for this operation")]
    RankTooLarge { n: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("polynomial division is not exact")]
    NotDivisible,

    #[error("division by zero")]
    DivisionByZero,

    #[error("word {word} is not a reduced sequence")]
    NotReduced { word: String },

    #[error("exchange property violated for s = {s} on word {word}")]
    ExchangeViolation { s: usize, word: String },

    #[error("braid move {kind} on {word} produced {result}, which is not a reduced expression of the same involution")]
    BraidMoveViolation {
        kind: String,
        word: String,
        result: String,
    },

    #[error("pattern precondition failed: {0}")]
    Precondition(String),

    #[error("no case of the classification matched: {0}")]
    NoCaseMatched(String),

    #[error("bar-invariant basis element for {w} is not uniquely determined at {y}")]
    UniquenessViolation { w: String, y: String },

    #[error("no usable specialization point after {attempts} attempts")]
    SpecializationDegenerate { attempts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
