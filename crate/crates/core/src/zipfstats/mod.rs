//! Rank-frequency curves, log-log power-law fits and the exact rank
//! distribution of the ideal branching game.
//!
//! Two rank conventions appear here. Curves and fits use 1-based ranks
//! (rank 1 is the most frequent state). The ideal-game formulas use
//! 0-based indices `n`; convert with [`zero_indexed`] and [`one_indexed`].

mod curve;
mod fit;
mod ideal;
mod montecarlo;

use thiserror::Error;

pub use curve::{rank_curve, write_rank_csv, RankCurve};
pub use fit::{fit_power_law, tail_exponent, FitOptions, PowerLawFit};
pub use ideal::{
    bounds_check, depth_probability, ideal_probability, ideal_state_count, plateau_index, plateau_start, BoundsReport,
};
pub use montecarlo::{compare_with_ideal, IdealComparison};

#[derive(Debug, Error)]
pub enum ZipfError {
    #[error("the table is empty")]
    EmptyTable,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("invalid rank range [{lo}, {hi}] for a curve of length {len}")]
    InvalidRange { lo: u64, hi: u64, len: u64 },
    #[error("non-positive frequency at rank {0}")]
    NonPositive(u64),
    #[error("rank index {n} out of range for {count} states")]
    OutOfRange { n: u128, count: u128 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{0} states exceeds the exhaustive-check limit")]
    TooLarge(u128),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// 1-based curve rank to the 0-based index of the ideal-game formulas.
pub fn zero_indexed(rank: u64) -> u128 {
    assert!(rank >= 1, "ranks start at 1");
    u128::from(rank - 1)
}

pub fn one_indexed(n: u128) -> u64 {
    u64::try_from(n + 1).expect("rank fits in u64")
}
