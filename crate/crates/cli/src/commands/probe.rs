use std::path::PathBuf;

use clap::Args;
use gzl_core::search::{optimal_move_sweep, Evaluator, RolloutEvaluator, SearchConfig, SolverEvaluator};
use gzl_core::solver::{Solver, SolverConfig};
use gzl_core::GameState;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::write_csv_rows;
use crate::config::{resolve, seed_or_env};
use crate::error::CliError;
use crate::manifest::{with_suffix, Run};

#[derive(Args, Debug, Serialize)]
pub struct ProbeArgs {
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub width: Option<u8>,
    #[arg(long)]
    pub height: Option<u8>,
    /// Number of random positions to probe.
    #[arg(long)]
    pub states: Option<usize>,
    /// Positions are played out at random until at most this many cells are empty.
    #[arg(long)]
    pub max_remaining: Option<u32>,
    /// Temperature grid, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub temperature: Option<Vec<f64>>,
    #[arg(long)]
    pub sims: Option<u32>,
    #[arg(long)]
    pub c_puct: Option<f64>,
    #[arg(long)]
    pub rollouts: Option<u32>,
    /// rollout or solver.
    #[arg(long)]
    pub evaluator: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProbeConfig {
    pub width: u8,
    pub height: u8,
    pub states: usize,
    pub max_remaining: u32,
    pub temperature: Vec<f64>,
    pub sims: u32,
    pub c_puct: f64,
    pub rollouts: u32,
    pub evaluator: String,
    pub seed: Option<u64>,
    pub out: PathBuf,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        let s = SearchConfig::<f64>::default();
        ProbeConfig {
            width: 7,
            height: 6,
            states: 100,
            max_remaining: 14,
            temperature: vec![0.05, 0.1, 0.25, 0.5, 1.0, 2.0],
            sims: s.simulations,
            c_puct: s.c_puct,
            rollouts: s.rollout_count,
            evaluator: "rollout".into(),
            seed: None,
            out: "probe".into(),
        }
    }
}

/// A non-terminal position with at most `max_remaining` empty cells,
/// reached by uniform random play.
fn random_position(cfg: &ProbeConfig, rng: &mut ChaCha8Rng) -> Result<GameState, CliError> {
    loop {
        let mut s = GameState::connect_four(cfg.width, cfg.height)?;
        while !s.is_terminal() && s.remaining_plies().unwrap_or(0) > cfg.max_remaining {
            let legal = s.legal_actions()?;
            s.play(*legal.choose(rng).expect("non-terminal"))?;
        }
        if !s.is_terminal() {
            return Ok(s);
        }
    }
}

pub fn run(args: ProbeArgs) -> Result<(), CliError> {
    let mut run = Run::start("mcts-probe");
    let mut cfg: ProbeConfig = resolve(args.config.as_deref(), &args)?;
    let seed = seed_or_env(cfg.seed)?;
    cfg.seed = Some(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states = (0..cfg.states).map(|_| random_position(&cfg, &mut rng)).collect::<Result<Vec<_>, _>>()?;

    let search = SearchConfig {
        simulations: cfg.sims,
        c_puct: cfg.c_puct,
        temperature: 1.0,
        rollout_count: cfg.rollouts,
        unvisited_q: 0.0,
        seed,
    };
    let evaluator: Box<dyn Evaluator<f64>> = match cfg.evaluator.as_str() {
        "rollout" => Box::new(RolloutEvaluator::new(cfg.rollouts)),
        "solver" => Box::new(SolverEvaluator::new(SolverConfig::default())),
        other => return Err(CliError::Config(format!("unknown evaluator {other:?}"))),
    };
    let mut solver = Solver::new(SolverConfig::default());
    let rows = optimal_move_sweep(&states, &cfg.temperature, &search, evaluator.as_ref(), &mut solver, &mut rng)?;

    let csv = with_suffix(&cfg.out, "csv");
    let n = write_csv_rows(
        &csv,
        "temperature,mean_p_optimal,states_used,states_skipped",
        rows.iter().map(|r| format!("{},{},{},{}", r.temperature, r.mean_p_optimal, r.states_used, r.states_skipped)),
    )?;
    run.output(&csv, "csv", Some(n));
    run.finish(&cfg.out, Some(seed), &cfg)?;
    for r in &rows {
        println!("T={}: p(optimal) {:.3} over {} states", r.temperature, r.mean_p_optimal, r.states_used);
    }
    Ok(())
}
