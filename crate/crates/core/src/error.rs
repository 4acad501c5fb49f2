use thiserror::Error;

/// Every failure the toolkit can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("value {value} outside the domain {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("dimension mismatch: expected {expected:?}, got {actual:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        actual: (usize, usize),
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("singular affine transform (|det| = {det:e})")]
    SingularTransform { det: f64 },

    #[error("degenerate landmarks: {0}")]
    DegenerateLandmarks(String),

    #[error("empty overlap between reference and transformed test image")]
    EmptyOverlap,

    /// Single occupied histogram cell: the joint entropy vanishes and NMI is undefined.
    #[error("degenerate joint histogram (zero joint entropy, mi = {mi})")]
    DegenerateHistogram { mi: f64 },

    #[error("image too small: need at least {min}x{min}, got {width}x{height}")]
    TooSmall { width: usize, height: usize, min: usize },

    #[error("no threshold: image occupies fewer than two gray bins")]
    NoThreshold,

    #[error("empty focus: all weights vanish")]
    EmptyFocus,

    #[error("registration failed: {0}")]
    RegistrationFailed(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Coarse classification used for process exit codes.
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Domain { .. }
            | Error::InvalidImage(_)
            | Error::DimensionMismatch { .. }
            | Error::InvalidParameter(_)
            | Error::InvalidDistribution(_)
            | Error::SingularTransform { .. }
            | Error::DegenerateLandmarks(_)
            | Error::TooSmall { .. }
            | Error::Parse(_)
            | Error::Io(_) => ErrorKind::Input,
            Error::EmptyOverlap
            | Error::DegenerateHistogram { .. }
            | Error::NoThreshold
            | Error::EmptyFocus
            | Error::Internal(_) => ErrorKind::Degenerate,
            Error::RegistrationFailed(_) => ErrorKind::Registration,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Degenerate,
    Registration,
}

pub type Result<T> = std::result::Result<T, Error>;
