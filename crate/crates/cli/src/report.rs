use serde::Serialize;
use serde_json::Value;

use crate::germfile::{FileError, FileErrorKind};

pub const SCHEMA: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Diagnostic {
    pub level: &'static str,
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl Diagnostic {
    pub fn warning(kind: &'static str, message: impl Into<String>) -> Self {
        Diagnostic {
            level: "warning",
            kind,
            message: message.into(),
            line: None,
            column: None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub diagnostics: Vec<Diagnostic>,
    pub timing_ms: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    File(#[from] FileError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Engine(#[from] icis_core::Error),
    #[error("{0} self-test checks failed")]
    Selftest(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use icis_core::Error as E;
        match self {
            CliError::Io { .. } | CliError::Usage(_) => EXIT_PARSE,
            CliError::File(e) => match e.kind {
                FileErrorKind::NotGerm => EXIT_PRECONDITION,
                _ => EXIT_PARSE,
            },
            CliError::Engine(e) => match e {
                E::Parse { .. } => EXIT_PARSE,
                E::Precondition(_)
                | E::LengthMismatch { .. }
                | E::ContextMismatch { .. }
                | E::IndexOutOfRange { .. }
                | E::InfiniteColength => EXIT_PRECONDITION,
                E::Degenerate(_) => EXIT_DEGENERATE,
                _ => EXIT_FAILED,
            },
            CliError::Selftest(_) => EXIT_FAILED,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            EXIT_PARSE => match self {
                CliError::Io { .. } => "io",
                CliError::Usage(_) => "usage",
                CliError::File(FileError { kind: FileErrorKind::Arity, .. }) => "arity",
                _ => "parse",
            },
            EXIT_PRECONDITION => "precondition",
            EXIT_DEGENERATE => "degenerate",
            _ => match self {
                CliError::Selftest(_) => "selftest",
                _ => "internal",
            },
        }
    }

    pub fn diagnostic(&self) -> Diagnostic {
        let (line, column, message) = match self {
            CliError::File(e) => (Some(e.line), Some(e.column), e.message.clone()),
            other => (None, None, other.to_string()),
        };
        Diagnostic {
            level: "error",
            kind: self.kind(),
            message,
            line,
            column,
        }
    }
}
