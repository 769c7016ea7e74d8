use std::path::PathBuf;

use clap::Args;
use gzl_core::zipfstats::{fit_power_law, rank_curve, tail_exponent, write_rank_csv, FitOptions, PowerLawFit};
use serde::{Deserialize, Serialize};

use super::{load_table, prefix};
use crate::config::resolve;
use crate::error::CliError;
use crate::manifest::{create, with_suffix, write_json, Run};

#[derive(Args, Debug, Serialize)]
pub struct ZipfArgs {
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Frequency table written by `simulate`.
    #[arg(long = "in")]
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    /// Output prefix (default: the input path).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// First rank of the fit range.
    #[arg(long)]
    pub lo: Option<u64>,
    /// Last rank of the fit range (default: min(unique states, 10000)).
    #[arg(long)]
    pub hi: Option<u64>,
    /// Drop states seen fewer times than this before ranking.
    #[arg(long)]
    pub min_count: Option<u64>,
    /// Also fit the tail above this rank.
    #[arg(long)]
    pub tail_split: Option<u64>,
    /// Keep the trailing equal-frequency run in fits.
    #[arg(long)]
    pub include_tail: Option<bool>,
    #[arg(long)]
    pub resample_points: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ZipfConfig {
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub lo: u64,
    pub hi: Option<u64>,
    pub min_count: u64,
    pub tail_split: Option<u64>,
    pub include_tail: bool,
    pub resample_points: usize,
}

impl Default for ZipfConfig {
    fn default() -> Self {
        let o = FitOptions::default();
        ZipfConfig {
            input: None,
            out: None,
            lo: 1,
            hi: None,
            min_count: 1,
            tail_split: None,
            include_tail: o.include_tail_plateau,
            resample_points: o.resample_points,
        }
    }
}

#[derive(Debug, Serialize)]
struct FitReport {
    unique_states: u64,
    total: f64,
    min_count: u64,
    fit: PowerLawFit<f64>,
    tail: Option<PowerLawFit<f64>>,
}

pub const DEFAULT_HI: u64 = 10_000;

pub fn run(args: ZipfArgs) -> Result<(), CliError> {
    let mut run = Run::start("zipf");
    let cfg: ZipfConfig = resolve(args.config.as_deref(), &args)?;
    let input = cfg.input.clone().ok_or_else(|| CliError::Config("--in is required".into()))?;
    let (_, mut table) = load_table(&input)?;
    run.input(&input);
    if cfg.min_count > 1 {
        table.retain_min_count(cfg.min_count);
    }
    let curve = rank_curve::<f64>(&table)?;
    let opts = FitOptions { resample_points: cfg.resample_points, include_tail_plateau: cfg.include_tail };
    let hi = cfg.hi.unwrap_or(curve.len().min(DEFAULT_HI));
    let fit = fit_power_law(&curve, cfg.lo, hi, opts)?;
    let tail = cfg.tail_split.map(|s| tail_exponent(&curve, s, opts)).transpose()?;

    let out = prefix(&cfg.out, &input);
    let csv = with_suffix(&out, "rank.csv");
    write_rank_csv(create(&csv)?, &curve)?;
    run.output(&csv, "csv", Some(curve.len()));
    let json = with_suffix(&out, "fit.json");
    let report = FitReport { unique_states: curve.len(), total: curve.total, min_count: cfg.min_count, fit, tail };
    write_json(&json, &report)?;
    run.output(&json, "json", None);
    run.finish(&out, None, &cfg)?;
    println!("alpha {:.4} (r2 {:.4}) over ranks {}..={} of {}", fit.alpha, fit.r_squared, fit.lo, fit.hi, curve.len());
    if let Some(t) = tail {
        println!("tail alpha {:.4} (r2 {:.4}) over ranks {}..={}", t.alpha, t.r_squared, t.lo, t.hi);
    }
    Ok(())
}
