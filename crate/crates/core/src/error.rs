use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("no solution at precision: row {row} needs valuation {required}, has {valuation}")]
    NoSolutionAtPrecision { row: usize, valuation: u32, required: u32 },

    #[error("matrix is not invertible over Z/{0}")]
    NotInvertible(u64),

    #[error("generator index {index} out of range for {generators} generators")]
    BadGeneratorIndex { index: usize, generators: usize },

    #[error("constant term is not a unit")]
    NotAUnit,

    #[error("operation unsupported for surface groups: {0}")]
    UnsupportedForSurface(&'static str),

    #[error("expected {expected} generator images, got {got}")]
    WrongImageCount { expected: usize, got: usize },

    #[error("images do not preserve the surface relation")]
    RelationNotPreserved,

    #[error("word too long after substitution ({0} letters)")]
    WordTooLong(usize),

    #[error("endomorphism is not an automorphism")]
    NotAnAutomorphism,

    #[error("truncation degree {0} too small, need at least 3")]
    DegreeTooSmall(usize),

    #[error("endomorphism is not in the Torelli subgroup")]
    NotTorelli,

    #[error("class function inner product is not rational")]
    NonRationalResult,

    #[error("negative multiplicity {multiplicity} for irreducible {index}")]
    NegativeMultiplicity { index: usize, multiplicity: String },

    #[error("non-integral multiplicity {multiplicity} for irreducible {index}")]
    NonIntegralMultiplicity { index: usize, multiplicity: String },

    #[error("invalid character table: {0}")]
    InvalidTable(String),

    #[error("cannot parse cyclotomic value {input:?}: {reason}")]
    CyclotomicParse { input: String, reason: String },

    #[error("cannot parse action character {input:?}: {reason}")]
    ActionParse { input: String, reason: String },

    #[error("not realizable: {0}")]
    NotRealizable(String),

    #[error("schema error: {0}")]
    Schema(String),
}
