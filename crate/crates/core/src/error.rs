use thiserror::Error;

use crate::algebra::GenIdx;

/// Failures of the algebra layer: bad signatures, foreign symbols, degree queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("the zero element has no degree")]
    ZeroDegree,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator index {0} is not part of the signature")]
    ForeignGenerator(GenIdx),
    #[error("coefficient has {found} exponents but the signature has h1 rank {expected}")]
    CoefficientRank { expected: usize, found: usize },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("action of `{0}` must be positive")]
    NonPositiveAction(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DgaError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("expected {expected} differential entries, found {found}")]
    DifferentialCount { expected: usize, found: usize },
    #[error("generator `{0}` has no differential entry")]
    MissingDifferential(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error("elementary automorphism shift contains its own target `{0}`")]
    ShiftContainsTarget(String),
    #[error("elementary automorphism on `{target}` does not preserve degree")]
    DegreeMismatch { target: String },
    #[error("relabel is not a degree preserving bijection: {0}")]
    BadRelabel(String),
    #[error("handle slide shift must be a single term: {0}")]
    NotMonomial(String),
    #[error("precondition {equation} violated at `{generator}`")]
    Precondition { equation: String, generator: String },
    #[error("constructed map is not a chain map at `{0}`")]
    NotChainMap(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearizedError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{count} degree-0 generators exceed the enumeration cap {cap}")]
    TooManyDegreeZero { count: usize, cap: usize },
    #[error("linearization needs Z2 coefficients; h1 rank is {0}")]
    NeedsZ2(usize),
    #[error("differential of `{0}` has a constant term after conjugation")]
    NotGood(String),
    #[error("augmentation is not valid: fails on `{0}`")]
    InvalidAugmentation(String),
    #[error("augmentation assigns a value to `{0}`, which does not have degree 0")]
    AugmentationDegree(String),
    #[error("full homology needs {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error("connected sum needs matching {0}")]
    Incompatible(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown corpus family `{0}`")]
    UnknownFamily(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// Everything that can reach a caller of the document layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Linearized(#[from] LinearizedError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("malformed document: {0}")]
    Document(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine readable category used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Algebra(_) => "algebra",
            Error::Dga(_) => "dga",
            Error::Morphism(_) => "morphism",
            Error::Linearized(_) => "linearized",
            Error::Construction(_) => "construction",
            Error::Index(_) => "index",
            Error::Corpus(_) => "corpus",
            Error::Document(_) | Error::Json(_) => "document",
        }
    }
}
