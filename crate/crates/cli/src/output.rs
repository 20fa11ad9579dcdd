//! Shared output machinery: exact-plus-float field encoding, deterministic
//! CSV/JSON emission and the exit-code contract.

use ndt_core::rational::{to_f64, Rational};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::PathBuf;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{}", msg),
            CliError::Io(err) => write!(f, "{}", err),
        }
    }
}

/// Whether the command's own checks passed. Distinct from usage errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    VerificationFailed,
}

/// A rational carried in both exact and float form. The exact form is
/// authoritative; the float is a convenience shadow.
#[derive(Debug, Clone, Serialize)]
pub struct RationalField {
    pub num: String,
    pub den: String,
    pub float: f64,
}

pub fn rat_field(r: &Rational) -> RationalField {
    RationalField {
        num: r.numer().to_string(),
        den: r.denom().to_string(),
        float: to_f64(r),
    }
}

/// CSV cell triple `num,den,float` for one rational.
pub fn csv_rat(r: &Rational) -> String {
    format!("{},{},{}", r.numer(), r.denom(), to_f64(r))
}

/// Incremental CSV builder with `#`-prefixed header comments.
pub struct Csv {
    buffer: String,
}

impl Csv {
    pub fn new(command: &str) -> Self {
        let mut buffer = String::new();
        let _ = writeln!(buffer, "# schema: {}", SCHEMA_VERSION);
        let _ = writeln!(buffer, "# tool: ndtlab {}", TOOL_VERSION);
        let _ = writeln!(buffer, "# command: {}", command);
        Csv { buffer }
    }

    pub fn comment(&mut self, text: &str) {
        let _ = writeln!(self.buffer, "# {}", text);
    }

    pub fn row(&mut self, cells: &str) {
        let _ = writeln!(self.buffer, "{}", cells);
    }

    pub fn finish(self) -> String {
        self.buffer
    }
}

/// Wraps command output in the versioned top-level JSON object.
pub fn json_document(
    inputs: serde_json::Value,
    outputs: serde_json::Value,
    seed: Option<u64>,
    field_docs: &[(&str, &str)],
) -> String {
    let docs: serde_json::Map<String, serde_json::Value> = field_docs
        .iter()
        .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.to_string())))
        .collect();
    let doc = serde_json::json!({
        "schema": SCHEMA_VERSION,
        "inputs": inputs,
        "outputs": outputs,
        "metadata": {
            "tool": format!("ndtlab {}", TOOL_VERSION),
            "seed": seed,
            "field_docs": docs,
        },
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("static document serializes");
    text.push('\n');
    text
}

/// Writes to `--out` when given, otherwise to stdout.
pub fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(CliError::Io),
        None => {
            print!("{}", content);
            Ok(())
        }
    }
}
