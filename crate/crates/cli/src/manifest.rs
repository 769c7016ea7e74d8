use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Serialize)]
pub struct OutputFile {
    pub path: String,
    pub format: &'static str,
    /// Data rows (CSV, excluding the header) or entries (tables).
    pub rows: Option<u64>,
}

/// Sidecar describing one run; `config` is the resolved configuration.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: &'static str,
    pub tool_version: &'static str,
    pub seed: Option<u64>,
    pub config: Value,
    pub inputs: Vec<String>,
    pub outputs: Vec<OutputFile>,
    pub started_unix_secs: u64,
    pub wall_clock_secs: f64,
}

pub struct Run {
    subcommand: &'static str,
    started: Instant,
    started_unix: u64,
    inputs: Vec<String>,
    outputs: Vec<OutputFile>,
}

impl Run {
    pub fn start(subcommand: &'static str) -> Self {
        let started_unix = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        Run { subcommand, started: Instant::now(), started_unix, inputs: Vec::new(), outputs: Vec::new() }
    }

    pub fn input(&mut self, path: &Path) {
        self.inputs.push(path.display().to_string());
    }

    pub fn output(&mut self, path: &Path, format: &'static str, rows: Option<u64>) {
        self.outputs.push(OutputFile { path: path.display().to_string(), format, rows });
    }

    /// Writes `<prefix>.<subcommand>.manifest.json` and returns its path.
    pub fn finish(self, prefix: &Path, seed: Option<u64>, config: &impl Serialize) -> Result<PathBuf, CliError> {
        let manifest = RunManifest {
            subcommand: self.subcommand,
            tool_version: env!("CARGO_PKG_VERSION"),
            seed,
            config: serde_json::to_value(config).map_err(|e| CliError::Config(e.to_string()))?,
            inputs: self.inputs,
            outputs: self.outputs,
            started_unix_secs: self.started_unix,
            wall_clock_secs: self.started.elapsed().as_secs_f64(),
        };
        let path = with_suffix(prefix, &format!("{}.manifest.json", self.subcommand));
        write_json(&path, &manifest)?;
        Ok(path)
    }
}

/// `prefix` with `.suffix` appended to its file name.
pub fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

pub fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(CliError::io(dir))?;
    }
    File::create(path).map(BufWriter::new).map_err(CliError::io(path))
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e.into() })?;
    w.write_all(b"\n").and_then(|_| w.flush()).map_err(CliError::io(path))
}
