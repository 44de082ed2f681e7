use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("unsupported over the {field} field: {operation}")]
    Unsupported {
        operation: &'static str,
        field: &'static str,
    },

    #[error("the 2-form is degenerate")]
    DegenerateForm,

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not skew-symmetric")]
    NotSkew,

    #[error("odd dimension {0}")]
    OddDimension(usize),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("conformal-symplectic condition violated: {0}")]
    CspViolation(String),

    #[error("Lie algebra has not passed validation")]
    NotValidated,

    #[error("Jacobi identity fails on {0} triple(s)")]
    Jacobi(usize),

    #[error("not a left-symmetric product: {0}")]
    InvalidLsa(String),

    #[error("not a derivation: {0}")]
    NotDerivation(String),

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}
