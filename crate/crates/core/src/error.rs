use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: invalid UTF-8")]
    InvalidUtf8 { path: String, line: usize },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("unknown UD POS tag `{0}`")]
    UnknownUdTag(String),
    #[error("unknown analyzer POS tag `{0}`")]
    UnknownAnalyzerTag(String),
    #[error("invalid segmentation: {0}")]
    InvalidSegmentation(String),
    #[error("training corpus is empty")]
    EmptyCorpus,
    #[error("vocabulary size {requested} is below the {required} entries that can never be removed")]
    VocabTooSmall { requested: usize, required: usize },
    #[error("unsupported artifact version `{0}`")]
    UnsupportedVersion(String),
    #[error("truncated artifact: header declares {expected} entries, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("segmentations spell different words: `{pred}` vs `{gold}`")]
    WordMismatch { pred: String, gold: String },
    #[error("boundary {boundary} is not an internal position of a {len}-character word")]
    BoundaryOutOfRange { boundary: usize, len: usize },
    #[error("no input to aggregate")]
    EmptyInput,
    #[error("contextual mode requires a POS tag for `{0}`")]
    MissingPos(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    pub(crate) fn parse(path: &str, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.to_string(),
            line,
            message: message.into(),
        }
    }

    /// True for errors caused by bad user input (files, flags, data) rather
    /// than a failure inside the toolkit.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Io { source, .. } => matches!(
                source.kind(),
                std::io::ErrorKind::NotFound
                    | std::io::ErrorKind::PermissionDenied
                    | std::io::ErrorKind::InvalidData
                    | std::io::ErrorKind::IsADirectory
            ),
            _ => true,
        }
    }
}
