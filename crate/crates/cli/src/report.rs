use std::time::Duration;

use pairloc_core::Error;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// A successful command outcome.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub result: Value,
    pub witnesses: Value,
    pub citations: Vec<&'static str>,
    pub elapsed: Duration,
}

impl Report {
    pub fn render(&self, pretty: bool, timings: bool) -> String {
        let timings = if timings {
            json!({ "totalMs": self.elapsed.as_secs_f64() * 1e3 })
        } else {
            json!({})
        };
        let value = json!({
            "schemaVersion": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "witnesses": self.witnesses,
            "citations": self.citations,
            "timings": timings,
        });
        to_text(&value, pretty)
    }
}

/// A failed command and how it should be reported.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    /// Bad command-line input not caught by argument parsing.
    Usage(String),
    /// A property suite reported failing samples.
    SuiteFailed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_internal() => 1,
            Failure::SuiteFailed(_) => 1,
            _ => 2,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Usage(m) | Failure::SuiteFailed(m) => m.clone(),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Core(Error::Precondition { .. }) => "precondition",
            Failure::Core(Error::Parse { .. }) => "parse",
            Failure::Core(Error::Internal(_)) => "internal",
            Failure::Core(_) => "input",
            Failure::Usage(_) => "usage",
            Failure::SuiteFailed(_) => "suite-failed",
        }
    }

    pub fn render(&self, command: &str, pretty: bool) -> String {
        let mut error = Map::new();
        error.insert("kind".into(), self.kind().into());
        match self {
            Failure::Core(Error::Precondition { tag, .. }) => {
                error.insert("hypothesis".into(), (*tag).into());
            }
            Failure::Core(Error::Parse { line, column, .. }) => {
                error.insert("line".into(), (*line).into());
                error.insert("column".into(), (*column).into());
            }
            _ => {}
        }
        error.insert("message".into(), self.message().into());
        let value = json!({
            "schemaVersion": SCHEMA_VERSION,
            "command": command,
            "error": error,
        });
        to_text(&value, pretty)
    }
}

fn to_text(value: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("JSON values always serialize")
    } else {
        value.to_string()
    }
}
