use thiserror::Error;

/// Process exit status of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Parse = 1,
    Validation = 2,
    Verification = 3,
    NotFrobenius = 4,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },

    #[error("{0}")]
    Parse(String),

    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Validation(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("not Frobenius: {0}")]
    NotFrobenius(String),

    #[error(transparent)]
    Core(#[from] lie_frobenius::Error),
}

impl CliError {
    pub fn status(&self) -> Status {
        use lie_frobenius::Error as E;
        match self {
            Self::Read { .. } | Self::Write { .. } | Self::Parse(_) | Self::Usage(_) => {
                Status::Parse
            }
            Self::Validation(_) => Status::Validation,
            Self::Verification(_) => Status::Verification,
            Self::NotFrobenius(_) => Status::NotFrobenius,
            Self::Core(e) => match e {
                E::Parse(_)
                | E::InvalidArgument(_)
                | E::DimensionMismatch(_)
                | E::FieldMismatch { .. } => Status::Parse,
                E::Jacobi(_) | E::NotValidated | E::CspViolation(_) => Status::Validation,
                E::DegenerateForm | E::OddDimension(_) => Status::NotFrobenius,
                _ => Status::Verification,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
