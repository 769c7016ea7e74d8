use std::path::PathBuf;

use clap::Args;
use gzl_core::harness::{run_selfplay, RecordMode};
use gzl_core::search::MovePolicy;
use gzl_core::zipfstats::{
    bounds_check, compare_with_ideal, depth_probability, ideal_state_count, plateau_start, BoundsReport, IdealComparison,
};
use gzl_core::{ExactProbability, GameSetup, HarnessConfig, ToyParams};
use serde::{Deserialize, Serialize};

use super::write_csv_rows;
use crate::config::{parse_count, resolve, seed_or_env};
use crate::error::CliError;
use crate::manifest::{with_suffix, write_json, Run};

#[derive(Args, Debug, Serialize)]
pub struct PlateauArgs {
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Branching factor, at least 2.
    #[arg(long)]
    pub b: Option<u32>,
    /// Game length in turns.
    #[arg(long = "K")]
    #[serde(rename = "K")]
    pub k: Option<u32>,
    /// Also play this many uniform games and compare counts with the exact law.
    #[arg(long, value_parser = parse_count)]
    pub montecarlo: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub workers: Option<usize>,
    /// |z| above which a sampled count is reported as an outlier.
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlateauConfig {
    pub b: u32,
    #[serde(rename = "K")]
    pub k: u32,
    pub montecarlo: Option<u64>,
    pub seed: Option<u64>,
    pub workers: usize,
    pub threshold: f64,
    pub out: PathBuf,
}

impl Default for PlateauConfig {
    fn default() -> Self {
        PlateauConfig { b: 2, k: 5, montecarlo: None, seed: None, workers: 0, threshold: 5.0, out: "plateau".into() }
    }
}

#[derive(Debug, Serialize)]
struct PlateauReport {
    ok: bool,
    violation_count: usize,
    bounds: BoundsReport,
    montecarlo: Option<IdealComparison>,
}

fn to_f64(p: &ExactProbability) -> f64 {
    *p.numer() as f64 / *p.denom() as f64
}

pub fn run(args: PlateauArgs) -> Result<(), CliError> {
    let mut run = Run::start("plateau");
    let mut cfg: PlateauConfig = resolve(args.config.as_deref(), &args)?;
    let (b, k) = (cfg.b, cfg.k);
    let count = ideal_state_count(b, k)?;
    let bounds = bounds_check::<ExactProbability>(b, k)?;

    let csv = with_suffix(&cfg.out, "csv");
    let mut rows = Vec::with_capacity(count as usize);
    for t in 1..=k {
        let p: ExactProbability = depth_probability(t, b, k)?;
        let (pf, exact) = (to_f64(&p), p.to_string());
        let end = if t == k { count } else { plateau_start(t + 1, b) };
        for n in plateau_start(t, b)..end {
            let lower = 1.0 / (f64::from(k) * ((f64::from(b) - 1.0) * n as f64 + f64::from(b)));
            rows.push(format!("{n},{t},{pf},{exact},{lower},{}", lower * f64::from(b)));
        }
    }
    let n_rows = write_csv_rows(&csv, "n,t,probability,probability_exact,lower_bound,upper_bound", rows)?;
    run.output(&csv, "csv", Some(n_rows));

    let montecarlo = match cfg.montecarlo {
        Some(games) => {
            let seed = seed_or_env(cfg.seed)?;
            cfg.seed = Some(seed);
            let branching = u16::try_from(b).map_err(|_| CliError::Config(format!("b = {b} is too large to simulate")))?;
            let params = ToyParams::new(branching, k)?;
            let mut h = HarnessConfig::new(GameSetup::toy(params.clone()), MovePolicy::Uniform, games, seed);
            h.workers = cfg.workers;
            h.record = Some(RecordMode::Reached);
            let table = run_selfplay(&h)?;
            Some(compare_with_ideal(&table, &params, cfg.threshold)?)
        }
        None => None,
    };

    let report = PlateauReport { ok: bounds.ok(), violation_count: bounds.violations.len(), bounds, montecarlo };
    let json = with_suffix(&cfg.out, "json");
    write_json(&json, &report)?;
    run.output(&json, "json", None);
    run.finish(&cfg.out, cfg.seed, &cfg)?;
    println!("b={b} K={k}: {count} ranks, {} violations", report.violation_count);
    if let Some(m) = &report.montecarlo {
        println!("{} games: max |z| {:.2}, {} beyond {}", m.games, m.max_abs_z, m.beyond_threshold, m.threshold);
    }
    Ok(())
}
