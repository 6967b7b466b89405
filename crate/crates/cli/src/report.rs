//! Output envelopes, file emission and error records.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use pam_core::Error;
use serde::Serialize;
use serde_json::{json, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub enum CliError {
    /// Bad or missing flag value.
    Usage(String),
    /// Malformed config file.
    Config(String),
    /// Subgraph text in no known format.
    SubgraphFormat(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Core(err)
    }
}

impl CliError {
    /// Stable name and exit code of the failure class.
    pub fn code(&self) -> (&'static str, i32) {
        match self {
            CliError::Usage(_) => ("usage", 2),
            CliError::Config(_) => ("config", 3),
            CliError::SubgraphFormat(_) => ("subgraph-format", 4),
            CliError::Core(e) => match e {
                Error::InvalidParams(_) => ("invalid-params", 5),
                Error::InvalidSubgraph(_) | Error::NotAttainable(_) => ("invalid-subgraph", 6),
                Error::Io(_) => ("io", 7),
                Error::Parse(_) => ("parse", 8),
                Error::InvalidEdgeSet(_) => ("invalid-edge-set", 9),
                Error::GraphTooSmall(..) | Error::OutOfRange(_) | Error::SizeLimit { .. } => ("out-of-range", 10),
                Error::Overflow(_) => ("overflow", 11),
            },
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Config(m) => m.clone(),
            CliError::SubgraphFormat(m) => format!("unknown subgraph format: {m}"),
            CliError::Core(e) => e.to_string(),
        }
    }

    /// One-line JSON error record.
    pub fn record(&self) -> String {
        let (code, exit_code) = self.code();
        json!({ "error": { "code": code, "exit_code": exit_code, "message": self.message() } }).to_string()
    }
}

pub fn envelope<T: Serialize>(config: BTreeMap<String, Value>, results: &T) -> Result<String, CliError> {
    let doc = json!({ "config": config, "results": results, "version": VERSION });
    let mut text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Core(Error::Io(e.to_string())))?;
    text.push('\n');
    Ok(text)
}

/// CSV with a header row taken from the field names of `T`.
pub fn csv_rows<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Core(Error::Io(e.to_string())))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Core(Error::Io(e.to_string())))?;
    String::from_utf8(bytes).map_err(|e| CliError::Core(Error::Io(e.to_string())))
}

/// Writes to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error, what: &str| CliError::Core(Error::Io(format!("{what}: {e}")));
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| io(e, &p.display().to_string())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| io(e, "stdout"))
        }
    }
}
