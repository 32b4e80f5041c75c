use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by a series with zero constant term")]
    ZeroConstantTerm,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resonance: indicial polynomial vanishes at n = {0}")]
    Resonance(usize),
    #[error("solution space has dimension {0}; increase the series order")]
    AmbiguousNullspace(usize),
    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a singular point of the operator")]
    NotSingular(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("non-integral value: {0}")]
    NonIntegral(String),
    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkew(usize, usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
