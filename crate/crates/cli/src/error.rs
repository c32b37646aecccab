use std::fmt;

use serde::Serialize;

/// Error categories, each with its own exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    Io,
    ParseError,
    ValidationError,
    OracleMismatch,
    NotStabilized,
    NotEventuallyPolynomial,
}

impl Kind {
    pub fn exit_code(self) -> u8 {
        match self {
            Kind::Io => 1,
            Kind::ParseError => 3,
            Kind::ValidationError => 4,
            Kind::OracleMismatch => 5,
            Kind::NotStabilized => 6,
            Kind::NotEventuallyPolynomial => 7,
        }
    }
}

/// 1-based position in the problem file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl Location {
    pub fn of(src: &str, byte: usize) -> Self {
        let byte = byte.min(src.len());
        let before = &src[..byte];
        let line = before.matches('\n').count() + 1;
        let start = before.rfind('\n').map_or(0, |i| i + 1);
        Location { line, column: before[start..].chars().count() + 1 }
    }
}

/// The machine-readable error object printed on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location: Option<Location>,
    /// 1-based task number.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub task: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Vec<i64>>,
}

impl CliError {
    pub fn new(kind: Kind, message: impl Into<String>) -> Self {
        CliError { kind, message: message.into(), location: None, task: None, rows: Vec::new() }
    }

    pub fn at(mut self, location: Location) -> Self {
        self.location = Some(location);
        self
    }

    pub fn in_task(mut self, task: usize) -> Self {
        self.task.get_or_insert(task);
        self
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Self::new(Kind::ValidationError, message)
    }

    /// Maps a core error; parse positions are resolved by the caller.
    pub fn from_core(e: &dimpoly_core::Error) -> Self {
        use dimpoly_core::Error as E;
        let kind = match e {
            E::Parse { .. } => Kind::ParseError,
            E::NotStabilized { .. } => Kind::NotStabilized,
            E::NotEventuallyPolynomial { .. } => Kind::NotEventuallyPolynomial,
            _ => Kind::ValidationError,
        };
        CliError::new(kind, e.to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self }).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.kind)?;
        if let Some(t) = self.task {
            write!(f, " in task {}", t)?;
        }
        if let Some(l) = self.location {
            write!(f, " at line {}, column {}", l.line, l.column)?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for CliError {}

pub type Result<T> = std::result::Result<T, CliError>;
