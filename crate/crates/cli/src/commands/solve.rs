use std::fs;
use std::path::PathBuf;

use clap::Args;
use gzl_core::solver::{solve_timed, RankBucket, SolveResult, Solver, SolverConfig, SolverError};
use gzl_core::{GameId, GameState, ObservationKey};
use serde::{Deserialize, Serialize};

use super::{load_table, prefix, write_csv_rows};
use crate::config::{parse_count, resolve};
use crate::error::CliError;
use crate::manifest::{with_suffix, Run};

#[derive(Args, Debug, Serialize)]
pub struct SolveArgs {
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// CSV of positions with a `moves` (column digits from the empty board)
    /// or `key_hex` column.
    #[arg(long = "in")]
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    /// Connect Four frequency table; solves sampled ranks and reports CPU
    /// time per decade of rank instead.
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Board size for `moves` rows.
    #[arg(long)]
    pub width: Option<u8>,
    #[arg(long)]
    pub height: Option<u8>,
    /// Node budget per position.
    #[arg(long, value_parser = parse_count)]
    pub budget: Option<u64>,
    /// Refuse positions with more empty cells than this.
    #[arg(long)]
    pub max_remaining: Option<u32>,
    #[arg(long)]
    pub table_bits: Option<u32>,
    /// Timing mode: number of rank decades.
    #[arg(long)]
    pub decades: Option<u32>,
    /// Timing mode: at most this many states per decade.
    #[arg(long)]
    pub per_bucket: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolveConfig {
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    pub table: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub width: u8,
    pub height: u8,
    pub budget: Option<u64>,
    pub max_remaining: Option<u32>,
    pub table_bits: u32,
    pub decades: u32,
    pub per_bucket: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            input: None,
            table: None,
            out: None,
            width: 7,
            height: 6,
            budget: None,
            max_remaining: None,
            table_bits: SolverConfig::default().table_bits,
            decades: 4,
            per_bucket: 300,
        }
    }
}

impl SolveConfig {
    fn solver(&self) -> Solver {
        Solver::new(SolverConfig { node_budget: self.budget, max_remaining: self.max_remaining, table_bits: self.table_bits })
    }
}

pub fn run(args: SolveArgs) -> Result<(), CliError> {
    let cfg: SolveConfig = resolve(args.config.as_deref(), &args)?;
    match (&cfg.input, &cfg.table) {
        (Some(_), None) => solve_positions(cfg),
        (None, Some(_)) => time_table(cfg),
        _ => Err(CliError::Config("give exactly one of --in and --table".into())),
    }
}

fn parse_positions(text: &str, cfg: &SolveConfig) -> Result<Vec<(String, Result<GameState, String>)>, CliError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines.next().ok_or_else(|| CliError::Config("empty position file".into()))?.split(',').map(str::trim).collect();
    let (col, is_moves) = match (header.iter().position(|h| *h == "moves"), header.iter().position(|h| *h == "key_hex")) {
        (Some(i), _) => (i, true),
        (None, Some(i)) => (i, false),
        (None, None) => return Err(CliError::Config("position file needs a `moves` or `key_hex` column".into())),
    };
    Ok(lines
        .map(|line| {
            let field = line.split(',').nth(col).unwrap_or("").trim().to_string();
            let state = if is_moves {
                GameState::connect_four_from_moves(cfg.width, cfg.height, &field).map_err(|e| e.to_string())
            } else {
                ObservationKey::from_hex(&field)
                    .and_then(|k| GameState::from_observation_key(&k, None))
                    .map_err(|e| e.to_string())
            };
            (field, state)
        })
        .collect())
}

fn result_row(i: usize, position: &str, r: Result<SolveResult, SolverError>) -> (String, bool) {
    match r {
        Ok(r) => {
            let actions: Vec<String> = r.optimal_actions.iter().map(|a| a.0.to_string()).collect();
            (format!("{i},{position},{},{},{},{},ok", r.value, actions.join(" "), r.all_losing, r.nodes_visited), true)
        }
        Err(e) => (format!("{i},{position},,,,,{}", e.to_string().replace(',', ";")), false),
    }
}

fn solve_positions(cfg: SolveConfig) -> Result<(), CliError> {
    let mut run = Run::start("solve");
    let input = cfg.input.clone().expect("checked by caller");
    let text = fs::read_to_string(&input).map_err(CliError::io(&input))?;
    run.input(&input);
    let positions = parse_positions(&text, &cfg)?;
    let mut solver = cfg.solver();
    let mut failed = 0;
    let mut rows = Vec::with_capacity(positions.len());
    for (i, (field, state)) in positions.iter().enumerate() {
        let r = match state {
            Ok(s) => solver.solve(s),
            Err(e) => Err(SolverError::Input(e.clone())),
        };
        let (row, ok) = result_row(i, field, r);
        failed += usize::from(!ok);
        rows.push(row);
    }
    let out = prefix(&cfg.out, &input);
    let csv = with_suffix(&out, "solved.csv");
    let n = write_csv_rows(&csv, "row,position,value,optimal_actions,all_losing,nodes,status", rows)?;
    run.output(&csv, "csv", Some(n));
    run.finish(&out, None, &cfg)?;
    println!("{} positions, {failed} failed", positions.len());
    if failed > 0 {
        return Err(CliError::Solver(SolverError::Input(format!("{failed} of {} positions could not be solved", positions.len()))));
    }
    Ok(())
}

fn time_table(cfg: SolveConfig) -> Result<(), CliError> {
    let mut run = Run::start("solve");
    let path = cfg.table.clone().expect("checked by caller");
    let (_, table) = load_table(&path)?;
    run.input(&path);
    if table.game() != GameId::ConnectFour {
        return Err(CliError::Solver(SolverError::UnsupportedGame(table.game())));
    }
    let buckets = RankBucket::decades(cfg.decades);
    let mut taken = vec![0usize; buckets.len()];
    let mut states = Vec::new();
    for (i, (key, _)) in table.ranked().into_iter().enumerate() {
        let rank = i as u64 + 1;
        let Some(b) = buckets.iter().position(|b| b.contains(rank)) else { break };
        if taken[b] >= cfg.per_bucket {
            continue;
        }
        let s = GameState::from_observation_key(key, None)?;
        if s.is_terminal() || cfg.max_remaining.is_some_and(|m| s.remaining_plies().unwrap_or(0) > m) {
            continue;
        }
        taken[b] += 1;
        states.push((rank, s));
    }
    let timings = solve_timed(&mut cfg.solver(), &states, &buckets)?;
    let out = prefix(&cfg.out, &path);
    let csv = with_suffix(&out, "buckets.csv");
    let n = write_csv_rows(
        &csv,
        "rank_lo,rank_hi,states,geo_mean_secs,geo_std,geo_mean_nodes",
        timings
            .iter()
            .map(|t| format!("{},{},{},{},{},{}", t.bucket.lo, t.bucket.hi, t.states, t.geo_mean_secs, t.geo_std, t.geo_mean_nodes)),
    )?;
    run.output(&csv, "csv", Some(n));
    run.finish(&out, None, &cfg)?;
    for t in &timings {
        println!("ranks [{}, {}): {} states, {:.3e} s", t.bucket.lo, t.bucket.hi, t.states, t.geo_mean_secs);
    }
    Ok(())
}
