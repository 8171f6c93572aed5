use std::fmt;
use std::path::Path;

use fcg::angle::AngleError;
use fcg::gates::GateError;
use fcg::linalg::LinalgError;
use fcg::predicate::PredicateError;
use fcg::simulator::SimError;
use fcg::verify::VerifyError;

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_VALIDATION: u8 = 3;
pub const EXIT_IO: u8 = 4;
pub const EXIT_SCHEMA: u8 = 5;

/// A failure with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Self::new(EXIT_VALIDATION, message)
    }

    pub fn schema(path: &Path, detail: impl fmt::Display) -> Self {
        Self::new(EXIT_SCHEMA, format!("{}: {detail}", path.display()))
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        Self::new(EXIT_IO, format!("{}: {err}", path.display()))
    }

    /// Predicate errors with a caret under the offending byte of `source`.
    pub fn predicate(source: &str, err: PredicateError) -> Self {
        let offset = match &err {
            PredicateError::Syntax { offset, .. }
            | PredicateError::UnknownIdentifier { offset, .. }
            | PredicateError::LiteralOverflow { offset } => Some(*offset),
            PredicateError::Type { offset, .. } => *offset,
            _ => None,
        };
        let mut message = err.to_string();
        if let Some(offset) = offset {
            let column = source[..offset.min(source.len())].chars().count();
            message.push_str(&format!("\n  {source}\n  {}^", " ".repeat(column)));
        }
        Self::new(predicate_code(&err), message)
    }

    pub fn with_context(mut self, context: &str) -> Self {
        self.message = format!("{context}: {}", self.message);
        self
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn predicate_code(err: &PredicateError) -> u8 {
    if err.is_parse_error() || matches!(err, PredicateError::BadHex(_)) {
        EXIT_PARSE
    } else {
        EXIT_VALIDATION
    }
}

fn gate_code(err: &GateError) -> u8 {
    match err {
        GateError::Predicate(p) => predicate_code(p),
        GateError::UnknownGate(_) => EXIT_PARSE,
        GateError::Format(_) => EXIT_SCHEMA,
        _ => EXIT_VALIDATION,
    }
}

fn sim_code(err: &SimError) -> u8 {
    match err {
        SimError::Predicate(p) => predicate_code(p),
        SimError::Gate(g) => gate_code(g),
        SimError::Angle(_) => EXIT_PARSE,
        SimError::Format(_) | SimError::UnsupportedVersion(_) => EXIT_SCHEMA,
        SimError::Step { source, .. } => sim_code(source),
        _ => EXIT_VALIDATION,
    }
}

impl From<PredicateError> for CliError {
    fn from(err: PredicateError) -> Self {
        Self::new(predicate_code(&err), err.to_string())
    }
}

impl From<GateError> for CliError {
    fn from(err: GateError) -> Self {
        Self::new(gate_code(&err), err.to_string())
    }
}

impl From<SimError> for CliError {
    fn from(err: SimError) -> Self {
        Self::new(sim_code(&err), err.to_string())
    }
}

impl From<AngleError> for CliError {
    fn from(err: AngleError) -> Self {
        Self::new(EXIT_PARSE, err.to_string())
    }
}

impl From<LinalgError> for CliError {
    fn from(err: LinalgError) -> Self {
        Self::validation(err.to_string())
    }
}

impl From<VerifyError> for CliError {
    fn from(err: VerifyError) -> Self {
        let code = match &err {
            VerifyError::Gate(g) => gate_code(g),
            VerifyError::Sim(s) => sim_code(s),
            _ => EXIT_VALIDATION,
        };
        Self::new(code, err.to_string())
    }
}
