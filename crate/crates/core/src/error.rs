use thiserror::Error;

/// Errors raised by the coefficient and stability machinery.
///
/// Variants fall into three classes that callers (the CLI in particular)
/// map to distinct exit codes: malformed input, refusals due to a
/// configured size cap, and integrity failures that indicate a bug.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition at position {position}: {reason}")]
    Parse { position: usize, reason: String },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("refused: {what} = {requested} exceeds the cap of {cap}{hint}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
        hint: String,
    },

    #[error("integrity failure: {0}")]
    Integrity(String),

    #[error("no quasi-polynomial fit with period <= {period_max}: {diagnostics}")]
    NoFit {
        period_max: usize,
        diagnostics: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn cap(what: &'static str, requested: usize, cap: usize) -> Self {
        Error::CapExceeded {
            what,
            requested,
            cap,
            hint: String::new(),
        }
    }

    /// True for refusals caused by a size cap.
    pub fn is_refusal(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }

    /// True for failures that signal an internal inconsistency.
    pub fn is_integrity(&self) -> bool {
        matches!(self, Error::Integrity(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
