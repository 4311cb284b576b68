use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("sequence of length {len} exceeds truncation degree {degree}")]
    SequenceTooLong { len: usize, degree: usize },

    #[error("strand {strand}, event {event}: {msg}")]
    MalformedGauss {
        strand: usize,
        event: usize,
        msg: String,
    },

    #[error("quotient context mismatch")]
    ContextMismatch,

    #[error("requested length {requested} exceeds solver truncation {available}")]
    TruncationExceeded { requested: usize, available: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("missing table entry for sequence {0}")]
    MissingEntry(String),

    #[error("parse error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("arc {label}: {msg}")]
    PdArc { label: u32, msg: String },

    #[error("invalid PD diagram: {0}")]
    PdDiagram(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Errors caused by malformed input text, as opposed to well-formed
    /// input that fails a semantic check.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::Json(_))
    }

    pub(crate) fn syntax_at(text: &str, offset: usize, msg: impl Into<String>) -> Self {
        let offset = offset.min(text.len());
        let before = &text[..offset];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }
}
