//! Seeded, parallel self-play and state-frequency accounting.
//!
//! Each game `i` draws from its own ChaCha8 stream `(seed, i)`, workers
//! build private tables and the tables are merged entrywise, so a run's
//! table is a function of its config alone.

mod captures;
mod io;
mod selfplay;
mod sketch;
mod table;
mod turns;

use thiserror::Error;

use crate::engines::{EngineError, GameId};
use crate::search::SearchError;

pub use captures::capture_difference_histogram;
pub use io::{read_table, write_csv, write_table, TableHeader, TABLE_MAGIC, TABLE_VERSION};
pub use selfplay::{play_game, play_game_with, run_selfplay, GameRecord, HarnessConfig, Prefilter, RecordMode, Step};
pub use table::{Entry, FrequencyTable};
pub use turns::{spearman, turn_statistics, RankTurn, TurnStats};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid harness configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("the table is empty")]
    EmptyTable,
    #[error("{0} does not track captures")]
    CapturesUnsupported(GameId),
    #[error("malformed table file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
