//! Machine-readable run reports and the exit-code contract.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

/// Why a command did not produce its normal result.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input.
    #[error("{0}")]
    Parse(String),
    /// Well-formed input that the operation cannot accept.
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Parse(_) => Status::ParseError,
            CliError::Precondition(_) => Status::PreconditionError,
        }
    }
}

/// How a run ended; each status has one exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    /// The command answered, and the answer is no (not a model, not
    /// isomorphic, unsatisfiable, no model in range).
    Negative,
    /// A budget was hit; whatever was found is still reported.
    Incomplete,
    ParseError,
    PreconditionError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Negative => 1,
            Status::ParseError => 2,
            Status::PreconditionError => 3,
            Status::Incomplete => 4,
        }
    }
}

#[derive(Debug, Default, Serialize)]
pub struct Timings {
    pub total_ms: f64,
    /// Per-item wall clock, keyed by triple or cardinality.
    pub items_ms: BTreeMap<String, f64>,
}

pub fn millis(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

/// Everything outside `timings` is a function of the inputs and budgets.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub status: Status,
    pub exit_code: i32,
    pub exhausted: Option<bool>,
    pub results: Value,
    pub files_written: Vec<String>,
    pub error: Option<String>,
    pub timings: Timings,
}

/// What a command hands back to `main`: a status, the structured results,
/// and the human-readable rendering of the same.
pub struct Outcome {
    pub status: Status,
    pub exhausted: Option<bool>,
    pub results: Value,
    pub text: String,
    pub files_written: Vec<String>,
    pub item_timings: BTreeMap<String, f64>,
}

impl Outcome {
    pub fn new(status: Status, results: Value, text: String) -> Self {
        Outcome { status, exhausted: None, results, text, files_written: Vec::new(), item_timings: BTreeMap::new() }
    }

    pub fn exhausted(mut self, exhausted: bool) -> Self {
        self.exhausted = Some(exhausted);
        self
    }
}
