use std::path::PathBuf;

use clap::Args;
use gzl_core::harness::capture_difference_histogram;
use serde::{Deserialize, Serialize};

use super::{load_table, prefix, write_csv_rows};
use crate::config::resolve;
use crate::error::CliError;
use crate::manifest::{with_suffix, Run};

#[derive(Args, Debug, Serialize)]
pub struct CaptureArgs {
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Oware or checkers frequency table.
    #[arg(long = "in")]
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Only states seen at least this many times.
    #[arg(long)]
    pub min_count: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CaptureConfig {
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub min_count: u64,
}

impl Default for CaptureConfig {
    fn default() -> Self {
        CaptureConfig { input: None, out: None, min_count: 2 }
    }
}

pub fn run(args: CaptureArgs) -> Result<(), CliError> {
    let mut run = Run::start("capture");
    let cfg: CaptureConfig = resolve(args.config.as_deref(), &args)?;
    let input = cfg.input.clone().ok_or_else(|| CliError::Config("--in is required".into()))?;
    let (_, table) = load_table(&input)?;
    run.input(&input);
    let hist = capture_difference_histogram(&table, cfg.min_count)?;
    let out = prefix(&cfg.out, &input);
    let csv = with_suffix(&out, "capture.csv");
    let rows = write_csv_rows(&csv, "abs_diff,frequency", hist.iter().map(|(d, n)| format!("{d},{n}")))?;
    run.output(&csv, "csv", Some(rows));
    run.finish(&out, None, &cfg)?;
    let total: u64 = hist.values().sum();
    println!("{total} states with count >= {} over {} capture differences", cfg.min_count, hist.len());
    Ok(())
}
