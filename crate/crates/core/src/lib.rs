//! Game-state frequency toolkit.
//!
//! Plays board games (Connect Four, Pentago, Oware, Checkers and a
//! constant-branching toy game) under random, biased or tree-search
//! policies, counts how often each position occurs, and analyses the
//! resulting rank-frequency curves:
//!
//! - [`engines`]: rule-complete game engines behind one [`GameState`] type.
//! - [`search`]: policies, PUCT tree search, temperature policies and loss terms.
//! - [`harness`]: seeded, parallel self-play and frequency tables.
//! - [`zipfstats`]: rank curves, power-law fits and the ideal branching-game distribution.
//! - [`solver`]: exact Connect Four solving with alpha-beta and a transposition table.
//! - [`scalinglaws`]: quantization-model loss formulas, zeta and Elo conversions.
//!
//! Numeric code is generic over the scalar type (see [`num`]); the aliases
//! below fix the common `f64` instantiations and the exact rational type
//! used for the ideal-game distribution.

pub mod engines;
pub mod harness;
pub mod num;
pub mod scalinglaws;
pub mod search;
pub mod solver;
pub mod zipfstats;

pub use engines::{Action, GameId, GameSetup, GameState, ObservationKey, Outcome, Player, ToyParams};
pub use harness::{FrequencyTable, HarnessConfig};
pub use num::{ExactScalar, Real};

/// Exact probability type for the ideal branching game.
pub type ExactProbability = num_rational::Ratio<u128>;

pub type PolicyDistribution = search::PolicyDistribution<f64>;
pub type SearchConfig = search::SearchConfig<f64>;
pub type SearchTree = search::SearchTree<f64>;
pub type SearchNode = search::SearchNode<f64>;
pub type MovePolicy = search::MovePolicy<f64>;
pub type LossTerms = search::LossTerms<f64>;

pub type RankCurve = zipfstats::RankCurve<f64>;
pub type PowerLawFit = zipfstats::PowerLawFit<f64>;

pub type QuantizationParams = scalinglaws::QuantizationParams<f64>;
pub type RankCurve32 = zipfstats::RankCurve<f32>;
pub type PowerLawFit32 = zipfstats::PowerLawFit<f32>;
