pub mod capture;
pub mod plateau;
pub mod probe;
pub mod scaling;
pub mod simulate;
pub mod solve;
pub mod turns;
pub mod zipf;

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use gzl_core::harness::{read_table, TableHeader};
use gzl_core::FrequencyTable;

use crate::error::CliError;

pub fn load_table(path: &Path) -> Result<(TableHeader, FrequencyTable), CliError> {
    let f = File::open(path).map_err(CliError::io(path))?;
    Ok(read_table(BufReader::new(f))?)
}

/// The output prefix: `--out` if given, else the input path.
pub fn prefix(out: &Option<PathBuf>, input: &Path) -> PathBuf {
    out.clone().unwrap_or_else(|| input.to_path_buf())
}

/// Writes a header and rows, returning the row count.
pub fn write_csv_rows<I, R>(path: &Path, header: &str, rows: I) -> Result<u64, CliError>
where
    I: IntoIterator<Item = R>,
    R: AsRef<str>,
{
    let mut w = crate::manifest::create(path)?;
    let mut n = 0;
    let io = |e| CliError::Io { path: path.to_path_buf(), source: e };
    writeln!(w, "{header}").map_err(io)?;
    for r in rows {
        writeln!(w, "{}", r.as_ref()).map_err(io)?;
        n += 1;
    }
    w.flush().map_err(io)?;
    Ok(n)
}

pub fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
