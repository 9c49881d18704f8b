//! Library half of the `qent` binary: state-file ingestion, report
//! assembly, and command implementations. `main.rs` only parses flags and
//! prints.

pub mod commands;
pub mod report;
pub mod statefile;

/// Exit code classes, mirroring the library's error taxonomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    /// Bad flags or parameters (exit 2).
    Argument,
    /// A state file that does not parse or validate (exit 3).
    State,
    /// An internal identity residual exceeded its tolerance (exit 4).
    Numeric,
}

impl ExitKind {
    pub fn code(self) -> i32 {
        match self {
            ExitKind::Argument => 2,
            ExitKind::State => 3,
            ExitKind::Numeric => 4,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ExitKind::Argument => "argument",
            ExitKind::State => "state",
            ExitKind::Numeric => "numeric",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: ExitKind, message: impl Into<String>) -> Self {
        Self {
            kind,
            message: message.into(),
        }
    }

    pub fn argument(message: impl Into<String>) -> Self {
        Self::new(ExitKind::Argument, message)
    }

    /// One-line machine-parsable diagnostic, e.g.
    /// `error[argument]: chain for n = 3 needs 2 bases, got 1`.
    pub fn diagnostic(&self) -> String {
        format!("error[{}]: {}", self.kind.label(), self.message)
    }
}

impl From<qent::Error> for CliError {
    fn from(e: qent::Error) -> Self {
        let kind = match &e {
            qent::Error::Shape(_) | qent::Error::Argument(_) => ExitKind::Argument,
            qent::Error::Domain(_) => ExitKind::State,
            qent::Error::Numeric(_) => ExitKind::Numeric,
        };
        Self::new(kind, e.to_string())
    }
}
