use std::path::PathBuf;

use clap::Args;
use gzl_core::harness::{spearman, turn_statistics};
use serde::{Deserialize, Serialize};

use super::{load_table, prefix, write_csv_rows};
use crate::config::resolve;
use crate::error::CliError;
use crate::manifest::{with_suffix, write_json, Run};

#[derive(Args, Debug, Serialize)]
pub struct TurnsArgs {
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(long = "in")]
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// States with a mean turn above this count as late-game.
    #[arg(long)]
    pub late_threshold: Option<f64>,
    /// Rank window for the late-game fraction.
    #[arg(long)]
    pub window: Option<usize>,
    /// Only the most frequent states (default: all).
    #[arg(long)]
    pub max_ranks: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TurnsConfig {
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub late_threshold: f64,
    pub window: usize,
    pub max_ranks: Option<usize>,
}

impl Default for TurnsConfig {
    fn default() -> Self {
        TurnsConfig { input: None, out: None, late_threshold: 40.0, window: 100, max_ranks: None }
    }
}

#[derive(Debug, Serialize)]
struct TurnsSummary {
    ranks: usize,
    /// Rank correlation between rank and mean turn.
    spearman_rank_turn: Option<f64>,
    late_states: usize,
    min_mean_turn: f64,
    max_mean_turn: f64,
    /// Count-weighted mean turn per decade of ranks, as `(lo, hi, turn)`.
    decade_mean_turns: Vec<(u64, u64, f64)>,
}

pub fn run(args: TurnsArgs) -> Result<(), CliError> {
    let mut run = Run::start("turns");
    let cfg: TurnsConfig = resolve(args.config.as_deref(), &args)?;
    let input = cfg.input.clone().ok_or_else(|| CliError::Config("--in is required".into()))?;
    let (_, table) = load_table(&input)?;
    run.input(&input);
    let stats = turn_statistics(&table, cfg.late_threshold, cfg.window, cfg.max_ranks)?;

    let out = prefix(&cfg.out, &input);
    let csv = with_suffix(&out, "turns.csv");
    let rows = write_csv_rows(
        &csv,
        "rank,count,mean_turn,var_turn,late_fraction",
        stats.ranks.iter().map(|r| format!("{},{},{},{},{}", r.rank, r.count, r.mean_turn, r.var_turn, r.late_fraction)),
    )?;
    run.output(&csv, "csv", Some(rows));

    let turns = stats.mean_turns();
    let ranks: Vec<f64> = stats.ranks.iter().map(|r| r.rank as f64).collect();
    let n = stats.ranks.len() as u64;
    let mut decades = Vec::new();
    let mut lo = 1;
    while lo <= n {
        let hi = (lo * 10 - 1).min(n);
        if let Some(t) = stats.weighted_mean_turn(lo, hi) {
            decades.push((lo, hi, t));
        }
        lo *= 10;
    }
    let summary = TurnsSummary {
        ranks: stats.ranks.len(),
        spearman_rank_turn: spearman(&ranks, &turns),
        late_states: turns.iter().filter(|&&t| t > cfg.late_threshold).count(),
        min_mean_turn: turns.iter().copied().fold(f64::INFINITY, f64::min),
        max_mean_turn: turns.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        decade_mean_turns: decades,
    };
    let json = with_suffix(&out, "turns.json");
    write_json(&json, &summary)?;
    run.output(&json, "json", None);
    run.finish(&out, None, &cfg)?;
    println!(
        "{} ranks, mean turn {}..{}, spearman {}",
        summary.ranks,
        summary.min_mean_turn,
        summary.max_mean_turn,
        super::opt(summary.spearman_rank_turn.map(|r| format!("{r:.3}")))
    );
    Ok(())
}
