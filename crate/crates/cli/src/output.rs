use std::fmt::Write as _;

use serde_json::{json, Value};

/// What a command produced, in both renderings.
pub struct Report {
    pub command: String,
    pub group: String,
    pub seed: Option<u64>,
    pub inputs: Value,
    pub results: Value,
    pub failures: Value,
    pub text: String,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &str, group: &str) -> Self {
        Self {
            command: command.into(),
            group: group.into(),
            seed: None,
            inputs: json!({}),
            results: json!({}),
            failures: json!([]),
            text: String::new(),
            passed: true,
        }
    }

    /// Appends a `key: value` text line and records the value in `results`.
    pub fn field(&mut self, key: &str, value: impl Into<Value> + std::fmt::Display) {
        let _ = writeln!(self.text, "{key}: {value}");
        self.results[key] = value.into();
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn json(&self) -> Value {
        json!({
            "command": self.command,
            "group": self.group,
            "inputs": self.inputs,
            "results": self.results,
            "failures": self.failures,
            "seed": self.seed,
        })
    }
}

/// Errors split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad literal, group spec or suite name.
    Usage(anyhow::Error),
    Compute(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(e) | CliError::Compute(e) => {
                if f.alternate() {
                    write!(f, "{e:#}")
                } else {
                    write!(f, "{e}")
                }
            }
        }
    }
}

pub fn usage(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Usage(e.into())
}

pub fn compute(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Compute(e.into())
}
