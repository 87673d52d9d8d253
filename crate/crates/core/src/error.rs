use crate::arith::ArithError;

/// Errors raised by the lattice, seed, chart, grading and lifting layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,
    #[error("zero polynomial: {0}")]
    ZeroPolynomial(&'static str),
    #[error("monomial input where a non-monomial is required: {0}")]
    MonomialInput(String),
    #[error("invalid mutation datum: {0}")]
    InvalidDatum(String),
    #[error("vertex '{0}' is frozen")]
    FrozenVertex(String),
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("column {0} is not primitive")]
    NonPrimitiveColumn(String),
    #[error("seed is not of maximal rank (rank {rank} < {mutable} mutable vertices); the adjacent-chart intersection only bounds the upper cluster algebra from above")]
    NotMaximalRank { rank: usize, mutable: usize },
    #[error("grading not compatible at vertex '{vertex}': {detail}")]
    NotCompatible { vertex: String, detail: String },
    #[error("not homogeneous: {first} has degree {first_degree:?}, {second} has degree {second_degree:?}")]
    NotHomogeneous { first: String, first_degree: Vec<i64>, second: String, second_degree: Vec<i64> },
    #[error("not a member of the intersection: {0}")]
    NotMember(String),
    #[error("chart index {0} out of range")]
    ChartIndex(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
