use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("SGML parse error at byte {offset}: {message}")]
    Sgml { offset: usize, message: String },

    #[error("query syntax error at column {column}: {message}")]
    QuerySyntax { column: usize, message: String },

    #[error("query semantic error: {0}")]
    QuerySemantic(String),

    #[error("duplicate knowledge record title: {0:?}")]
    DuplicateTitle(String),

    #[error("invalid knowledge record on line {line}: {message}")]
    Dump { line: usize, message: String },

    #[error("invalid resource file {path}, line {line}: {message}")]
    Resource { path: PathBuf, line: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("fold {fold}: {source}")]
    Fold {
        fold: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
