use std::path::PathBuf;

use clap::Args;
use gzl_core::engines::KeyOptions;
use gzl_core::harness::{run_selfplay, write_csv, write_table, HarnessConfig, Prefilter, RecordMode};
use gzl_core::search::{MovePolicy, SearchConfig};
use gzl_core::{GameId, GameSetup, ToyParams};
use serde::{Deserialize, Serialize};

use crate::config::{parse_count, resolve, seed_or_env};
use crate::error::CliError;
use crate::manifest::{create, with_suffix, Run};

#[derive(Args, Debug, Serialize)]
pub struct SimulateArgs {
    /// JSON file with any of the options below; flags take precedence.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// connect4, pentago, oware, checkers or toy.
    #[arg(long)]
    pub game: Option<String>,
    /// Connect Four board width.
    #[arg(long)]
    pub width: Option<u8>,
    #[arg(long)]
    pub height: Option<u8>,
    /// Toy branching factor.
    #[arg(long)]
    pub branching: Option<u16>,
    /// Toy game length in turns.
    #[arg(long)]
    pub length: Option<u32>,
    /// Toy branch probabilities, comma separated; implies the biased policy.
    #[arg(long, value_delimiter = ',')]
    pub prefs: Option<Vec<f64>>,
    /// uniform, biased or mcts.
    #[arg(long)]
    pub policy: Option<String>,
    #[arg(long)]
    pub sims: Option<u32>,
    #[arg(long)]
    pub temperature: Option<f64>,
    #[arg(long)]
    pub c_puct: Option<f64>,
    /// Random playouts per leaf evaluation.
    #[arg(long)]
    pub rollouts: Option<u32>,
    #[arg(long)]
    pub unvisited_q: Option<f64>,
    #[arg(long, value_parser = parse_count)]
    pub games: Option<u64>,
    /// Master seed; falls back to GZL_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads (0 = all cores). Does not affect results.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub ply_cap: Option<u32>,
    /// acting (states moved from) or reached (states moved to).
    #[arg(long)]
    pub record: Option<String>,
    /// Only store states seen at least this many times (two-pass count sketch).
    #[arg(long)]
    pub prefilter: Option<u32>,
    #[arg(long)]
    pub prefilter_log2_width: Option<u32>,
    #[arg(long)]
    pub prefilter_rows: Option<u32>,
    /// Include Oware scores in the state key.
    #[arg(long)]
    pub oware_scores: Option<bool>,
    /// Output table path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV export path (default: `<out>.csv`).
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateConfig {
    pub game: String,
    pub width: Option<u8>,
    pub height: Option<u8>,
    pub branching: u16,
    pub length: u32,
    pub prefs: Option<Vec<f64>>,
    pub policy: Option<String>,
    pub sims: u32,
    pub temperature: f64,
    pub c_puct: f64,
    pub rollouts: u32,
    pub unvisited_q: f64,
    pub games: u64,
    pub seed: Option<u64>,
    pub workers: usize,
    pub ply_cap: Option<u32>,
    pub record: Option<RecordMode>,
    pub prefilter: Option<u32>,
    pub prefilter_log2_width: u32,
    pub prefilter_rows: u32,
    pub oware_scores: bool,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        let search = SearchConfig::<f64>::default();
        let pf = Prefilter::default();
        SimulateConfig {
            game: "connect4".into(),
            width: None,
            height: None,
            branching: 2,
            length: 5,
            prefs: None,
            policy: None,
            sims: search.simulations,
            temperature: search.temperature,
            c_puct: search.c_puct,
            rollouts: search.rollout_count,
            unvisited_q: search.unvisited_q,
            games: 1000,
            seed: None,
            workers: 0,
            ply_cap: None,
            record: None,
            prefilter: None,
            prefilter_log2_width: pf.log2_width,
            prefilter_rows: pf.rows,
            oware_scores: true,
            out: None,
            csv: None,
        }
    }
}

pub fn game_setup(game: &str, width: Option<u8>, height: Option<u8>, toy: Option<ToyParams>) -> Result<GameSetup, CliError> {
    let id: GameId = game.parse()?;
    Ok(match id {
        GameId::ConnectFour => match (width, height) {
            (None, None) => GameSetup::new(id),
            (w, h) => GameSetup::connect_four(w.unwrap_or(7), h.unwrap_or(6)),
        },
        GameId::ToyIdeal => GameSetup::toy(toy.ok_or_else(|| CliError::Config("toy game needs --branching and --length".into()))?),
        _ => GameSetup::new(id),
    })
}

impl SimulateConfig {
    pub fn harness_config(&self, seed: u64) -> Result<HarnessConfig, CliError> {
        let toy = ToyParams::new(self.branching, self.length)?;
        let setup = game_setup(&self.game, self.width, self.height, Some(toy))?;
        let policy_name = self.policy.clone().unwrap_or_else(|| if self.prefs.is_some() { "biased" } else { "uniform" }.into());
        let policy = match policy_name.as_str() {
            "uniform" => MovePolicy::Uniform,
            "biased" => MovePolicy::Biased {
                prefs: self.prefs.clone().ok_or_else(|| CliError::Config("biased policy needs --prefs".into()))?,
            },
            "mcts" => MovePolicy::Mcts(SearchConfig {
                simulations: self.sims,
                c_puct: self.c_puct,
                temperature: self.temperature,
                rollout_count: self.rollouts,
                unvisited_q: self.unvisited_q,
                seed,
            }),
            other => return Err(CliError::Config(format!("unknown policy {other:?}"))),
        };
        let mut cfg = HarnessConfig::new(setup, policy, self.games, seed);
        cfg.workers = self.workers;
        cfg.ply_cap = self.ply_cap;
        cfg.record = self.record;
        cfg.key_options = KeyOptions { oware_scores: self.oware_scores };
        cfg.prefilter = self.prefilter.map(|threshold| Prefilter {
            threshold,
            log2_width: self.prefilter_log2_width,
            rows: self.prefilter_rows,
        });
        Ok(cfg)
    }
}

pub fn run(args: SimulateArgs) -> Result<(), CliError> {
    let mut run = Run::start("simulate");
    let mut cfg: SimulateConfig = resolve(args.config.as_deref(), &args)?;
    let seed = seed_or_env(cfg.seed)?;
    cfg.seed = Some(seed);
    let out = cfg.out.clone().ok_or_else(|| CliError::Config("--out is required".into()))?;
    let harness = cfg.harness_config(seed)?;
    let table = run_selfplay(&harness)?;

    let mut w = create(&out)?;
    write_table(&mut w, &table, &harness.digest())?;
    run.output(&out, "gzl-table", Some(table.len() as u64));
    let csv = cfg.csv.clone().unwrap_or_else(|| with_suffix(&out, "csv"));
    let rows = write_csv(create(&csv)?, &table)?;
    run.output(&csv, "csv", Some(rows as u64));
    run.finish(&out, Some(seed), &cfg)?;
    println!(
        "{}: {} games, {} states recorded, {} unique -> {}",
        harness.setup.game,
        table.games_played(),
        table.states_recorded(),
        table.len(),
        out.display()
    );
    Ok(())
}
