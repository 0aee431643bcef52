use thiserror::Error;

use crate::term::Sid;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A term variant is not allowed in the position it was given for.
    #[error("position error: {0}")]
    Position(String),

    #[error("invalid term: {0}")]
    InvalidTerm(String),

    #[error("dangling sid reference {0}")]
    DanglingSid(Sid),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("sid {sid} is referenced by {referrers} assertion(s)")]
    ReferencedSid { sid: Sid, referrers: usize },

    #[error("quoted triple nesting exceeds {limit}")]
    NestingOverflow { limit: usize },

    #[error("bad template: {0}")]
    BadTemplate(String),

    #[error("sid collision on {0}: same sid, different content")]
    SidCollision(Sid),

    #[error("syntax error at line {line}{}: {message}", column.map(|c| format!(", column {c}")).unwrap_or_default())]
    Syntax {
        line: usize,
        column: Option<usize>,
        message: String,
    },

    #[error("unknown endpoint {0}")]
    UnknownEndpoint(String),

    #[error("unsupported value: {0}")]
    UnsupportedValue(String),

    #[error("wrong datatype: expected <{expected}>, found <{found}>")]
    WrongDatatype { expected: String, found: String },

    /// Malformed composite-list lexical form.
    #[error("list parse error: {0}")]
    ListParse(String),

    #[error("ambiguous target: {matches} statements match")]
    AmbiguousTarget { matches: usize },
}

impl Error {
    pub(crate) fn syntax(line: usize, column: Option<usize>, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    /// Line number carried by a syntax error, if any.
    pub fn line(&self) -> Option<usize> {
        match self {
            Error::Syntax { line, .. } => Some(*line),
            _ => None,
        }
    }
}
