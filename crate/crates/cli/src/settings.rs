//! Flag and config-file resolution.
//!
//! A config file holds `key = value` lines; `#` starts a comment. A flag on
//! the command line replaces the file's value for the same key.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use serde_json::Value;

use crate::report::CliError;

pub const KEYS: &[&str] = &[
    "m",
    "delta",
    "t",
    "replicas",
    "seed",
    "subgraph",
    "ordered",
    "graph",
    "mode",
    "model",
    "edges",
    "format",
    "out",
    "urn_out",
    "density_out",
    "workers",
];

/// Keys left out of the echoed config because they cannot change results.
const UNECHOED: &[&str] = &["workers"];

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) =
            line.split_once('=').ok_or_else(|| CliError::Config(format!("line {}: expected key = value", i + 1)))?;
        let key = key.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Config(format!("line {}: unknown key '{key}'", i + 1)));
        }
        if map.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(CliError::Config(format!("line {}: duplicate key '{key}'", i + 1)));
        }
    }
    Ok(map)
}

#[derive(Debug, Default)]
pub struct Settings {
    file: BTreeMap<String, String>,
    echo: BTreeMap<String, Value>,
}

impl Settings {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let file = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Core(pam_core::Error::Io(format!("{}: {e}", p.display()))))?;
                parse_config(&text)?
            }
            None => BTreeMap::new(),
        };
        Ok(Settings { file, echo: BTreeMap::new() })
    }

    pub fn record(&mut self, key: &str, value: impl Into<Value>) {
        if !UNECHOED.contains(&key) {
            self.echo.insert(key.to_string(), value.into());
        }
    }

    /// The flag if given, else the config value, parsed and echoed.
    pub fn get<T>(&mut self, key: &str, flag: Option<String>) -> Result<Option<T>, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        let Some(raw) = flag.or_else(|| self.file.get(key).cloned()) else {
            return Ok(None);
        };
        let value =
            raw.parse::<T>().map_err(|e| CliError::Usage(format!("bad value '{raw}' for {}: {e}", flag_name(key))))?;
        self.record(key, echo_value(&raw));
        Ok(Some(value))
    }

    pub fn require<T>(&mut self, key: &str, flag: Option<String>) -> Result<T, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        self.get(key, flag)?
            .ok_or_else(|| CliError::Usage(format!("missing {} (flag or config key '{key}')", flag_name(key))))
    }

    pub fn switch(&mut self, key: &str, flag: bool) -> Result<bool, CliError> {
        let on = if flag { true } else { self.get::<bool>(key, None)?.unwrap_or(false) };
        self.record(key, on);
        Ok(on)
    }

    pub fn into_echo(self) -> BTreeMap<String, Value> {
        self.echo
    }
}

fn flag_name(key: &str) -> String {
    format!("--{}", key.replace('_', "-"))
}

/// Numbers echo as JSON numbers, everything else as strings.
fn echo_value(raw: &str) -> Value {
    if let Ok(n) = raw.parse::<i64>() {
        return n.into();
    }
    match raw.parse::<f64>() {
        Ok(x) if x.is_finite() => x.into(),
        _ => raw.into(),
    }
}

/// Comma-separated list of sizes, e.g. `1000,10000`.
#[derive(Debug, Clone, PartialEq)]
pub struct SizeList(pub Vec<usize>);

impl FromStr for SizeList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|x| {
                let x = x.trim();
                x.parse::<usize>().or_else(|_| match x.parse::<f64>() {
                    Ok(f) if f >= 0.0 && f.fract() == 0.0 && f < 1e18 => Ok(f as usize),
                    _ => Err(format!("'{x}' is not a size")),
                })
            })
            .collect::<Result<_, _>>()
            .map(SizeList)
    }
}
