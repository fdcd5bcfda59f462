use std::fmt;

use thiserror::Error;

use crate::semantics::Semantics;

/// 1-based position in a parsed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("argument index {0} does not belong to the framework")]
    InvalidArgument(usize),

    #[error("unknown argument `{name}`")]
    UnknownName { name: String },

    #[error("invalid argument name `{0}`")]
    InvalidName(String),

    #[error("invalid cut: {} offending link(s): {}", offending.len(), offending.join("; "))]
    InvalidCut { offending: Vec<String> },

    #[error("framework has {args} arguments, enumeration cap is {cap}")]
    CapExceeded { args: usize, cap: usize },

    #[error("link is not part of the attack relation")]
    LinkNotPresent,

    #[error("negative links have not been closed")]
    LinksNotClosed,

    #[error("semantics `{0}` is not supported by splitting")]
    UnsupportedSemantics(Semantics),

    #[error("{span}: unknown argument `{name}`")]
    UnknownArgument { name: String, span: SourceSpan },

    #[error("{span}: duplicate argument `{name}`")]
    DuplicateArgument { name: String, span: SourceSpan },

    #[error("{span}: reserved argument name `{name}`")]
    ReservedName { name: String, span: SourceSpan },

    #[error("{span}: syntax error: {message}")]
    Syntax { message: String, span: SourceSpan },

    #[error("{span}: cut is empty")]
    EmptyCut { span: SourceSpan },

    #[error("{span}: cut contains every argument")]
    FullCut { span: SourceSpan },

    #[error("invalid generator config: {0}")]
    InvalidConfig(String),

    #[error("split and oracle disagree: {0}")]
    Mismatch(String),
}

impl Error {
    /// Source position for parse errors.
    pub fn span(&self) -> Option<SourceSpan> {
        match self {
            Error::UnknownArgument { span, .. }
            | Error::DuplicateArgument { span, .. }
            | Error::ReservedName { span, .. }
            | Error::Syntax { span, .. }
            | Error::EmptyCut { span }
            | Error::FullCut { span } => Some(*span),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
