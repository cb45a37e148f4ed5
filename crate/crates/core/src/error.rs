use thiserror::Error;

/// Errors raised across the toolkit.
///
/// Variants that name a "stage" or "clause" carry enough text to locate the
/// failing check without re-running the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("no primitive root of unity of order {0} in this field")]
    UnsupportedOrder(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported rank: {0}")]
    UnsupportedRank(String),
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("bad composition: {0}")]
    BadComposition(String),
    #[error("rank too large: n = {n} is not below p^2 = {p_squared}")]
    RankTooLarge { n: usize, p_squared: usize },
    #[error("relation violated: {0}")]
    RelationViolation(String),
    #[error("freeness failure: {0}")]
    FreenessFailure(String),
    #[error("algorithm failure: {0}")]
    AlgorithmFailure(String),
    #[error("semisimple quotient does not split over the base field: {0}")]
    SplitError(String),
    #[error("algebra is not serial: {0}")]
    SerialityError(String),
    #[error("form is not symmetrizing: {0}")]
    NotSymmetricWithThisForm(String),
    #[error("parabolic certification failed at clause {clause}: {detail}")]
    CertificationFailure { clause: String, detail: String },
    #[error("map is not linear over the ambient algebra: {0}")]
    LinearityFailure(String),
    #[error("type D Morita description requires odd rank, got n = {0}")]
    EvenRankUnsupported(usize),
    #[error("pipeline stage '{stage}' failed: {detail}")]
    StageFailure { stage: String, detail: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
