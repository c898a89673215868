use thiserror::Error;

/// A record rejected during ingestion. `index` is the zero-based position of
/// the record in the input sequence.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{}", describe(.kind, .id))]
pub struct IngestError {
    pub index: usize,
    pub id: u64,
    pub kind: IngestErrorKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IngestErrorKind {
    Inverted,
    NonFinite(&'static str),
    DuplicateId,
    TooMany,
}

fn describe(kind: &IngestErrorKind, id: &u64) -> String {
    match kind {
        IngestErrorKind::Inverted => format!("l > r at id {id}"),
        IngestErrorKind::NonFinite(field) => format!("non-finite {field} at id {id}"),
        IngestErrorKind::DuplicateId => format!("duplicate id {id}"),
        IngestErrorKind::TooMany => format!("too many intervals (at id {id}); at most {} are supported", u32::MAX),
    }
}

/// Errors raised by the harness: file I/O, parsing and usage problems.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: line {line}: {message}")]
    Parse {
        path: String,
        line: u64,
        message: String,
    },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
