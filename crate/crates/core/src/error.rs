use thiserror::Error;

use crate::subset::Subset;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("chart mismatch: dimension {left} vs {right}")]
    ChartMismatch { left: usize, right: usize },
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("component {subset} is not a classical vector field")]
    NonClassical { subset: Subset },
    #[error("invalid Weil morphism: {0}")]
    InvalidWeilMorphism(String),
    #[error("cup factorization violated: g({i}) * g({j}) != 0")]
    InvalidFactorization { i: usize, j: usize },
    #[error("degree overflow: bracket of degree {degree} exceeds max degree {max}")]
    DegreeOverflow { degree: usize, max: usize },
    #[error("the Lie bracket extension needs the fully free algebra (vertical set must be empty)")]
    RelativeLieBracket,
    #[error("faces differ at component {subset}")]
    FaceMismatch { subset: Subset },
    #[error("boundaries differ at component {subset}")]
    BoundaryMismatch { subset: Subset },
    #[error("cup product undefined: components {left} and {right} of the second factor are disjoint and nonzero")]
    CupUndefined { left: Subset, right: Subset },
    #[error("malformed permutation word: {0}")]
    MalformedWord(String),
    #[error("operation needs arity at least {needed}, got {got}")]
    ArityTooSmall { needed: usize, got: usize },
    #[error("NotClosed: nontrivial homotopy at pair ({i},{j}), component {component}, decomposition {left} | {right}")]
    NotClosed {
        i: usize,
        j: usize,
        component: Subset,
        left: Subset,
        right: Subset,
    },
    #[error("NotFlagReducible: no permutation puts the support inside the flag chain")]
    NotFlagReducible,
    #[error("polyvector is not homogeneous")]
    Inhomogeneous,
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("type error: {0}")]
    Type(String),
    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    /// Process exit status for the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::UnknownIdentifier(_)
            | Error::Type(_)
            | Error::Usage(_)
            | Error::InvalidChart(_) => 1,
            _ => 2,
        }
    }
}
