use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix of size {size} exceeds the configured cap {cap}")]
    MatrixTooLarge { size: usize, cap: usize },
    #[error("singular matrix")]
    SingularMatrix,
    #[error("sign could not be certified at {bits} bits")]
    IndeterminateSign { bits: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid design: {0}")]
    InvalidDesign(String),
    #[error("operation requires exact rational data")]
    NotExact,
    #[error("enumeration of {count} candidates exceeds the cap {cap}")]
    EnumerationTooLarge { count: u128, cap: u128 },
    #[error("cofactor sign differs from the expected sign for subset {subset:?} (coefficient {index})")]
    SignLemmaViolation { subset: Vec<usize>, index: usize },
    #[error("hyperplane certificate for {subset:?} fails strictly at column {column}")]
    CertificateFailure { subset: Vec<usize>, column: usize },
    #[error("gap-parity and block classifications disagree on {subset:?}")]
    ClassificationMismatch { subset: Vec<usize> },
    #[error("simplex exceeded the iteration cap of {limit}")]
    IterationLimit { limit: usize },
    #[error("bound violated: {0}")]
    BoundViolation(String),
    #[error("cell route and oracle route disagree: {0}")]
    RouteDisagreement(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier used in structured error payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::MatrixTooLarge { .. } => "matrix_too_large",
            Error::SingularMatrix => "singular_matrix",
            Error::IndeterminateSign { .. } => "indeterminate_sign",
            Error::InvalidParams(_) => "invalid_params",
            Error::InvalidDesign(_) => "invalid_design",
            Error::NotExact => "not_exact",
            Error::EnumerationTooLarge { .. } => "enumeration_too_large",
            Error::SignLemmaViolation { .. } => "sign_lemma_violation",
            Error::CertificateFailure { .. } => "certificate_failure",
            Error::ClassificationMismatch { .. } => "classification_mismatch",
            Error::IterationLimit { .. } => "iteration_limit",
            Error::BoundViolation(_) => "bound_violation",
            Error::RouteDisagreement(_) => "route_disagreement",
            Error::Parse(_) => "parse_error",
        }
    }
}
