use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Why a run did not succeed, mapped to the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, unreadable files or documents that do not match a schema.
    Usage(String),
    /// The computation itself failed.
    Numeric(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numeric(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Numeric(m) => write!(f, "error: {m}"),
        }
    }
}

pub fn usage(e: impl fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

pub fn numeric(e: impl fmt::Display) -> Failure {
    Failure::Numeric(e.to_string())
}

/// Every file and parameter that determines a run, hashed into the output.
#[derive(Default)]
pub struct Inputs {
    hasher: Sha256,
    paths: BTreeMap<String, String>,
}

impl Inputs {
    pub fn read(&mut self, role: &str, path: &Path) -> Result<String, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {role} file {}: {e}", path.display())))?;
        self.absorb(role, text.as_bytes());
        self.paths.insert(role.to_owned(), path.display().to_string());
        Ok(text)
    }

    pub fn read_json<T: DeserializeOwned>(&mut self, role: &str, path: &Path) -> Result<T, Failure> {
        let text = self.read(role, path)?;
        serde_json::from_str(&text)
            .map_err(|e| usage(format!("{role} file {}: {e}", path.display())))
    }

    pub fn param(&mut self, key: &str, value: impl fmt::Display) {
        self.absorb(key, value.to_string().as_bytes());
    }

    fn absorb(&mut self, key: &str, bytes: &[u8]) {
        self.hasher.update(key.as_bytes());
        self.hasher.update([0u8]);
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    fn finish(self) -> (String, BTreeMap<String, String>) {
        (hex::encode(self.hasher.finalize()), self.paths)
    }
}

/// Result of a subcommand before it is wrapped and written.
pub struct Outcome {
    pub pass: bool,
    pub result: Value,
    pub table: Table,
}

impl Outcome {
    pub fn new(pass: bool, result: impl Serialize, table: Table) -> Result<Self, Failure> {
        Ok(Self {
            pass,
            result: serde_json::to_value(result).map_err(numeric)?,
            table,
        })
    }
}

/// Rows for `--format csv`.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    version: &'a str,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    tol: Option<f64>,
    input_digest: String,
    inputs: BTreeMap<String, String>,
    pass: bool,
    result: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub struct Run<'a> {
    pub command: &'a str,
    pub seed: u64,
    pub tol: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Run<'_> {
    pub fn emit(&self, inputs: Inputs, outcome: Outcome) -> Result<(), Failure> {
        let (input_digest, paths) = inputs.finish();
        let bytes = match self.format {
            Format::Json => {
                let envelope = Envelope {
                    command: self.command,
                    version: env!("CARGO_PKG_VERSION"),
                    seed: self.seed,
                    tol: self.tol,
                    input_digest,
                    inputs: paths,
                    pass: outcome.pass,
                    result: outcome.result,
                };
                let mut text = serde_json::to_string_pretty(&envelope).map_err(numeric)?;
                text.push('\n');
                text.into_bytes()
            }
            Format::Csv => {
                let mut buf = format!(
                    "# command={} seed={} input_digest={} pass={}\n",
                    self.command, self.seed, input_digest, outcome.pass
                )
                .into_bytes();
                let mut w = csv::Writer::from_writer(&mut buf);
                w.write_record(&outcome.table.header).map_err(numeric)?;
                for row in &outcome.table.rows {
                    w.write_record(row).map_err(numeric)?;
                }
                w.flush().map_err(numeric)?;
                drop(w);
                buf
            }
        };
        match &self.out {
            Some(path) => fs::write(path, bytes)
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
            None => std::io::stdout().write_all(&bytes).map_err(numeric),
        }
    }
}
