use thiserror::Error;

/// Errors raised by the algebra library.
///
/// Each variant has a stable short name (see [`Error::name`]) that the CLI and
/// the C ABI surface verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {0} is not a unit")]
    NonUnit(String),
    #[error("operation requires a finite ring, got {0}")]
    InfiniteRing(String),
    #[error("bad transvection index ({i},{j}) for n = {n}")]
    BadIndex { i: usize, j: usize, n: usize },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("ring or dimension mismatch: {0}")]
    SpecMismatch(String),
    #[error("predicted order {predicted} exceeds the enumeration cap {cap}")]
    TooLarge { predicted: u128, cap: u128 },
    #[error("operation requires a field, got {0}")]
    NotField(String),
    #[error("determinant is {0}, expected 1")]
    DetNotOne(String),
    #[error("word does not embed into the schedule (letter {letter} of {len})")]
    ScheduleTooShort { letter: usize, len: usize },
    #[error("matrix is not unitriangular")]
    NotUnitriangular,
    #[error("matrix is not in the carrier subgroup T_{i}{k}")]
    NotInCarrier { i: usize, k: usize },
    #[error("witness verification failed: {0}")]
    WitnessCheckFailed(String),
    #[error("invalid index pairs: {0}")]
    BadIndices(String),
    #[error("the formula degenerates in characteristic 2 (-1 = 1)")]
    CharTwo,
    #[error("subgroup is not normal in the host")]
    NotNormal,
    #[error("cocycle is not a coboundary")]
    NotCoboundary,
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("torsion split does not decompose the domain: {0}")]
    BadSplit(String),
    #[error("cocycle is not trivial")]
    NotTrivialCocycle,
    #[error("inconsistent deformation context: {0}")]
    InconsistentContext(String),
    #[error("word carries a diagonal factor; schedules hold transvections only")]
    DiagonalFactor,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Variant name, used as a machine-readable error code.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonUnit(_) => "NonUnit",
            Error::InfiniteRing(_) => "InfiniteRing",
            Error::BadIndex { .. } => "BadIndex",
            Error::NotInvertible => "NotInvertible",
            Error::SpecMismatch(_) => "SpecMismatch",
            Error::TooLarge { .. } => "TooLarge",
            Error::NotField(_) => "NotField",
            Error::DetNotOne(_) => "DetNotOne",
            Error::ScheduleTooShort { .. } => "ScheduleTooShort",
            Error::NotUnitriangular => "NotUnitriangular",
            Error::NotInCarrier { .. } => "NotInCarrier",
            Error::WitnessCheckFailed(_) => "WitnessCheckFailed",
            Error::BadIndices(_) => "BadIndices",
            Error::CharTwo => "CharTwo",
            Error::NotNormal => "NotNormal",
            Error::NotCoboundary => "NotCoboundary",
            Error::InvalidCocycle(_) => "InvalidCocycle",
            Error::BadSplit(_) => "BadSplit",
            Error::NotTrivialCocycle => "NotTrivialCocycle",
            Error::InconsistentContext(_) => "InconsistentContext",
            Error::DiagonalFactor => "DiagonalFactor",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
