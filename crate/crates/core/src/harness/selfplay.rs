use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::sketch::CountSketch;
use super::{FrequencyTable, HarnessError};
use crate::engines::{GameId, GameSetup, GameState, KeyOptions, ObservationKey, Outcome};
use crate::search::MovePolicy;

/// Which states of a game are counted.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordMode {
    /// Every state a move is chosen from, starting with the initial state.
    /// The recorded turn is `plies played + 1`, so the initial state is turn 1.
    Acting,
    /// Every state produced by a move, including the final one. The
    /// recorded turn is the number of plies played.
    Reached,
}

impl RecordMode {
    /// Toy games count the states produced by moves (one per turn depth);
    /// board games count the states moves are chosen from.
    pub fn default_for(game: GameId) -> Self {
        match game {
            GameId::ToyIdeal => RecordMode::Reached,
            _ => RecordMode::Acting,
        }
    }
}

/// Two-pass counting for large runs: a first pass fills a count sketch and
/// the second pass only stores keys whose sketch estimate reaches
/// `threshold`. Every key seen at least `threshold` times is kept exactly.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prefilter {
    pub threshold: u32,
    /// log2 of the counters per sketch row.
    pub log2_width: u32,
    pub rows: u32,
}

impl Default for Prefilter {
    fn default() -> Self {
        Prefilter { threshold: 2, log2_width: 27, rows: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarnessConfig {
    pub setup: GameSetup,
    pub policy: MovePolicy<f64>,
    pub num_games: u64,
    pub seed: u64,
    /// Worker threads; 0 uses every available core. Results do not depend on it.
    #[serde(default)]
    pub workers: usize,
    /// Stop a game after this many plies; `None` uses the rule cap.
    #[serde(default)]
    pub ply_cap: Option<u32>,
    #[serde(default)]
    pub record: Option<RecordMode>,
    #[serde(default)]
    pub key_options: KeyOptions,
    #[serde(default)]
    pub prefilter: Option<Prefilter>,
}

impl HarnessConfig {
    pub fn new(setup: GameSetup, policy: MovePolicy<f64>, num_games: u64, seed: u64) -> Self {
        HarnessConfig {
            setup,
            policy,
            num_games,
            seed,
            workers: 0,
            ply_cap: None,
            record: None,
            key_options: KeyOptions::default(),
            prefilter: None,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.num_games == 0 {
            return Err(HarnessError::Config("num_games must be >= 1".into()));
        }
        if self.ply_cap == Some(0) {
            return Err(HarnessError::Config("ply cap must be >= 1".into()));
        }
        if let Some(p) = &self.prefilter {
            if p.threshold < 1 || p.threshold > 255 || p.rows == 0 || !(4..=34).contains(&p.log2_width) {
                return Err(HarnessError::Config(format!("invalid prefilter {p:?}")));
            }
        }
        self.setup.initial_state()?;
        self.policy.validate()?;
        if let (MovePolicy::Biased { prefs }, Some(toy)) = (&self.policy, &self.setup.toy) {
            if prefs.len() != usize::from(toy.branching) {
                return Err(HarnessError::Config(format!(
                    "{} preferences for branching factor {}",
                    prefs.len(),
                    toy.branching
                )));
            }
        }
        Ok(())
    }

    pub fn record_mode(&self) -> RecordMode {
        self.record.unwrap_or_else(|| RecordMode::default_for(self.setup.game))
    }

    pub fn effective_ply_cap(&self) -> u32 {
        let rule = self.setup.max_plies();
        self.ply_cap.map_or(rule, |c| c.min(rule))
    }

    /// SHA-256 of the canonical JSON of everything that affects the table
    /// contents (the worker count is excluded).
    pub fn digest(&self) -> [u8; 32] {
        let mut canonical = self.clone();
        canonical.workers = 0;
        canonical.record = Some(self.record_mode());
        let json = serde_json::to_vec(&canonical).expect("config serializes");
        Sha256::digest(&json).into()
    }

    /// RNG for game `index`: the master seed with the game index as stream.
    pub fn game_rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

/// One recorded state of a trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub key: ObservationKey,
    pub turn: u32,
    /// (player 0, player 1) captures for Oware and Checkers.
    pub captures: Option<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GameRecord {
    pub steps: Vec<Step>,
    /// `Ongoing` if the game was cut by the ply cap.
    pub outcome: Outcome,
    pub plies: u32,
}

/// Plays one game, calling `visit(key, turn, state)` for every recorded state.
pub fn play_game_with(
    initial: &GameState,
    policy: &MovePolicy<f64>,
    ply_cap: u32,
    mode: RecordMode,
    key_options: KeyOptions,
    rng: &mut dyn RngCore,
    mut visit: impl FnMut(ObservationKey, u32, &GameState),
) -> Result<(Outcome, u32), HarnessError> {
    let mut s = initial.clone();
    let start = s.turn();
    loop {
        let plies = s.turn() - start;
        if s.is_terminal() || plies >= ply_cap {
            if mode == RecordMode::Reached && plies > 0 {
                visit(s.observation_key_with(key_options), plies, &s);
            }
            return Ok((s.outcome(), plies));
        }
        match mode {
            RecordMode::Acting => visit(s.observation_key_with(key_options), plies + 1, &s),
            RecordMode::Reached if plies > 0 => visit(s.observation_key_with(key_options), plies, &s),
            RecordMode::Reached => {}
        }
        let a = policy.choose(&s, rng)?;
        s.play(a)?;
    }
}

/// Plays one game and returns its recorded trajectory.
pub fn play_game(cfg: &HarnessConfig, rng: &mut dyn RngCore) -> Result<GameRecord, HarnessError> {
    let initial = cfg.setup.initial_state()?;
    let mut steps = Vec::new();
    let track = cfg.setup.game.tracks_captures();
    let (outcome, plies) = play_game_with(
        &initial,
        &cfg.policy,
        cfg.effective_ply_cap(),
        cfg.record_mode(),
        cfg.key_options,
        rng,
        |key, turn, s| steps.push(Step { key, turn, captures: if track { s.capture_counts().ok() } else { None } }),
    )?;
    Ok(GameRecord { steps, outcome, plies })
}

fn with_pool<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> Result<R, HarnessError> {
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| HarnessError::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Plays `cfg.num_games` games in parallel and counts every recorded state.
/// The table depends only on the config, not on the worker count.
pub fn run_selfplay(cfg: &HarnessConfig) -> Result<FrequencyTable, HarnessError> {
    cfg.validate()?;
    let initial = cfg.setup.initial_state()?;
    let game = cfg.setup.game;
    let cap = cfg.effective_ply_cap();
    let mode = cfg.record_mode();

    let sketch = match cfg.prefilter {
        Some(p) => {
            let sketch = CountSketch::new(p.log2_width, p.rows);
            with_pool(cfg.workers, || {
                (0..cfg.num_games).into_par_iter().try_for_each(|i| {
                    let mut rng = cfg.game_rng(i);
                    play_game_with(&initial, &cfg.policy, cap, mode, cfg.key_options, &mut rng, |k, _, _| {
                        sketch.add(k.as_bytes())
                    })
                    .map(|_| ())
                })
            })??;
            Some((sketch, p.threshold))
        }
        None => None,
    };

    let table = with_pool(cfg.workers, || {
        (0..cfg.num_games)
            .into_par_iter()
            .try_fold(
                || FrequencyTable::new(game),
                |mut t, i| {
                    let mut rng = cfg.game_rng(i);
                    play_game_with(&initial, &cfg.policy, cap, mode, cfg.key_options, &mut rng, |k, turn, _| match &sketch {
                        Some((s, threshold)) if s.estimate(k.as_bytes()) < *threshold => t.record_skipped(),
                        _ => t.record(k, turn),
                    })?;
                    t.finish_game();
                    Ok::<_, HarnessError>(t)
                },
            )
            .try_reduce(|| FrequencyTable::new(game), |a, b| Ok(a.merge(b)))
    })??;
    let mut table = table;
    if let Some((_, threshold)) = sketch {
        table.min_complete_count = threshold;
    }
    Ok(table)
}
