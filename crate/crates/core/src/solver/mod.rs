//! Exact Connect Four solving on any board with `width * (height + 1) <= 64`.
//!
//! Negamax alpha-beta over bitboards with a transposition table. Values are
//! ternary (+1 win, 0 draw, -1 loss) from the side to move. The root's
//! children are each solved exactly so that the full set of value-preserving
//! moves can be reported.

mod bitboard;
mod table;
mod timing;

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engines::{Action, GameId, GameState, Player};

use bitboard::Position;
use table::{Bound, TranspositionTable};

pub use timing::{ground_truth_value_loss, solve_timed, thread_cpu_time, BucketTiming, RankBucket, ValueLossReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("the solver only handles Connect Four, not {0}")]
    UnsupportedGame(GameId),
    #[error("position is already decided")]
    Terminal,
    #[error("{remaining} plies remain, limit is {limit}")]
    TooDeep { remaining: u32, limit: u32 },
    #[error("node budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("{0}")]
    Input(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Abort once this many nodes have been searched in one solve.
    pub node_budget: Option<u64>,
    /// Refuse positions with more empty cells than this.
    pub max_remaining: Option<u32>,
    /// log2 of the transposition table size in entries.
    pub table_bits: u32,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { node_budget: None, max_remaining: None, table_bits: 20 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    /// +1 / 0 / -1 for the side to move.
    pub value: i8,
    /// Moves whose resulting position keeps `value`. When every move loses
    /// this is all legal moves and `all_losing` is set.
    pub optimal_actions: Vec<Action>,
    pub all_losing: bool,
    pub nodes_visited: u64,
    pub cpu_time: Duration,
}

impl SolveResult {
    /// The value from `player`'s point of view, given the side to move.
    pub fn value_for(&self, mover: Player, player: Player) -> i8 {
        mover_to_player(self.value, mover, player)
    }
}

pub fn mover_to_player(value: i8, mover: Player, player: Player) -> i8 {
    if mover == player {
        value
    } else {
        -value
    }
}

/// One solver per worker; the table is private and reused across solves.
pub struct Solver {
    cfg: SolverConfig,
    table: TranspositionTable,
    dims: Option<(u8, u8)>,
    nodes: u64,
}

impl Solver {
    pub fn new(cfg: SolverConfig) -> Self {
        let table = TranspositionTable::new(cfg.table_bits);
        Solver { cfg, table, dims: None, nodes: 0 }
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    /// Forget every cached position.
    pub fn clear(&mut self) {
        self.table.clear();
    }

    fn prepare(&mut self, s: &GameState) -> Result<Position, SolverError> {
        let c4 = s.as_connect_four().ok_or(SolverError::UnsupportedGame(s.game_id()))?;
        if s.is_terminal() {
            return Err(SolverError::Terminal);
        }
        let remaining = c4.cells() - c4.disk_count();
        if let Some(limit) = self.cfg.max_remaining {
            if remaining > limit {
                return Err(SolverError::TooDeep { remaining, limit });
            }
        }
        let dims = (c4.width(), c4.height());
        if self.dims != Some(dims) {
            // keys are only unique for a fixed board size
            self.table.clear();
            self.dims = Some(dims);
        }
        self.nodes = 0;
        Ok(Position::from_board(c4))
    }

    /// Value and optimal-move set of a non-terminal Connect Four position.
    pub fn solve(&mut self, s: &GameState) -> Result<SolveResult, SolverError> {
        let start = thread_cpu_time();
        let pos = self.prepare(s)?;
        let legal: Vec<u32> = (0..pos.width()).filter(|&c| pos.can_play(c)).collect();
        let mut values = Vec::with_capacity(legal.len());
        for &col in &legal {
            let v = if pos.is_winning_move(col) {
                1
            } else {
                let child = pos.play_col(col);
                if child.is_full() {
                    0
                } else if child.can_win_next() {
                    -1
                } else {
                    -self.negamax(&child, -1, 1)?
                }
            };
            values.push(v);
        }
        let value = *values.iter().max().expect("non-terminal positions have a legal move");
        let optimal_actions =
            legal.iter().zip(&values).filter(|&(_, &v)| v == value).map(|(&c, _)| Action(c as u16)).collect();
        Ok(SolveResult {
            value,
            optimal_actions,
            all_losing: value == -1,
            nodes_visited: self.nodes,
            cpu_time: thread_cpu_time().saturating_sub(start),
        })
    }

    /// Value only; cheaper than [`solve`](Self::solve) because the root is
    /// searched with pruning.
    pub fn value(&mut self, s: &GameState) -> Result<i8, SolverError> {
        let pos = self.prepare(s)?;
        if pos.can_win_next() {
            return Ok(1);
        }
        self.negamax(&pos, -1, 1)
    }

    /// Negamax; callers guarantee the mover has no immediately winning move.
    fn negamax(&mut self, pos: &Position, mut alpha: i8, mut beta: i8) -> Result<i8, SolverError> {
        self.nodes += 1;
        if let Some(budget) = self.cfg.node_budget {
            if self.nodes > budget {
                return Err(SolverError::BudgetExceeded(budget));
            }
        }
        if pos.remaining() <= 1 {
            // the one cell left cannot win (checked by the caller) and fills the board
            return Ok(0);
        }
        let safe = pos.non_losing_moves();
        if safe == 0 {
            return Ok(-1);
        }
        if pos.remaining() <= 2 {
            return Ok(0);
        }

        let key = pos.key();
        let original_alpha = alpha;
        let mut tt_move = None;
        if let Some(e) = self.table.get(key) {
            tt_move = e.best;
            match e.bound {
                Bound::Exact => return Ok(e.value),
                Bound::Lower => alpha = alpha.max(e.value),
                Bound::Upper => beta = beta.min(e.value),
            }
            if alpha >= beta {
                return Ok(e.value);
            }
        }
        let mut best = -1i8;
        let mut best_col = None;
        for col in pos.ordered_moves(safe, tt_move) {
            let child = pos.play_col(col);
            let v = -self.negamax(&child, -beta, -alpha)?;
            if v > best {
                best = v;
                best_col = Some(col as u8);
            }
            if v > alpha {
                alpha = v;
            }
            if alpha >= beta {
                break;
            }
        }
        let bound = if best <= original_alpha {
            Bound::Upper
        } else if best >= beta {
            Bound::Lower
        } else {
            Bound::Exact
        };
        self.table.put(key, best, bound, pos.remaining() as u8, best_col);
        Ok(best)
    }
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new(SolverConfig::default())
    }
}
