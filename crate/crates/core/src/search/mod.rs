//! Move selection: uniform and biased random policies, PUCT tree search
//! with pluggable leaf evaluators, the visit-count temperature policy, the
//! value/policy loss and the optimal-move probe.

mod evaluate;
mod loss;
mod policy;
mod tree;

use rand::RngCore;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engines::{validate_prefs, Action, EngineError, GameState};
use crate::num::Real;
use crate::solver::{Solver, SolverError};

pub use evaluate::{random_playout, Evaluation, Evaluator, RolloutEvaluator, SolverEvaluator};
pub use loss::{composite_loss, LossTerms};
pub use policy::{optimal_move_probability, temperature_policy, PolicyDistribution};
pub use tree::{mcts_search, puct_select, Child, SearchConfig, SearchNode, SearchTree};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("cannot search from a finished game")]
    Terminal,
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("all visit counts are zero")]
    ZeroCounts,
    #[error("prediction assigns zero probability to target action {0}")]
    ZeroProbability(Action),
    #[error("policy does not apply: {0}")]
    UnsupportedPolicy(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// How a self-play game picks its moves.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MovePolicy<T> {
    /// Uniform over the legal actions.
    Uniform,
    /// Fixed per-branch probabilities; the state must have exactly
    /// `prefs.len()` legal actions (toy games).
    Biased { prefs: Vec<T> },
    /// PUCT search with the rollout evaluator, then a move drawn from the
    /// temperature policy.
    Mcts(SearchConfig<T>),
}

impl<T: Real> MovePolicy<T> {
    pub fn validate(&self) -> Result<(), SearchError> {
        match self {
            MovePolicy::Uniform => Ok(()),
            MovePolicy::Biased { prefs } => {
                let as_f64: Vec<f64> = prefs.iter().map(|p| p.as_f64()).collect();
                validate_prefs(&as_f64, prefs.len()).map_err(SearchError::from)
            }
            MovePolicy::Mcts(cfg) => cfg.validate(),
        }
    }

    pub fn choose(&self, state: &GameState, rng: &mut dyn RngCore) -> Result<Action, SearchError> {
        match self {
            MovePolicy::Uniform => {
                let legal = state.legal_actions()?;
                Ok(legal[rand::Rng::random_range(rng, 0..legal.len())])
            }
            MovePolicy::Biased { prefs } => biased_choice(state, prefs, rng),
            MovePolicy::Mcts(cfg) => {
                let eval = RolloutEvaluator::new(cfg.rollout_count);
                let tree = mcts_search(state, &eval, cfg, rng)?;
                Ok(tree.policy(cfg.temperature)?.sample(rng))
            }
        }
    }
}

/// Draws branch `i` with probability `prefs[i]`.
pub fn biased_choice<T: Real>(state: &GameState, prefs: &[T], rng: &mut dyn RngCore) -> Result<Action, SearchError> {
    let legal = state.legal_actions()?;
    if legal.len() != prefs.len() {
        return Err(SearchError::UnsupportedPolicy(format!(
            "{} preferences for {} legal actions",
            prefs.len(),
            legal.len()
        )));
    }
    Ok(PolicyDistribution { actions: legal, probs: prefs.to_vec() }.sample(rng))
}

/// Mean probability of an optimal move at one temperature.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow<T> {
    pub temperature: T,
    pub mean_p_optimal: T,
    pub states_used: usize,
    /// States whose every move loses; they have no meaningful optimal move.
    pub states_skipped: usize,
}

/// For each Connect Four state, runs one search and evaluates the resulting
/// visit counts at every temperature against the solver's optimal set.
pub fn optimal_move_sweep<T: Real>(
    states: &[GameState],
    temperatures: &[T],
    cfg: &SearchConfig<T>,
    evaluator: &dyn Evaluator<T>,
    solver: &mut Solver,
    rng: &mut dyn RngCore,
) -> Result<Vec<ProbeRow<T>>, SearchError> {
    let mut sums = vec![T::zero(); temperatures.len()];
    let mut used = 0;
    let mut skipped = 0;
    for s in states {
        let solved = solver.solve(s)?;
        if solved.all_losing {
            skipped += 1;
            continue;
        }
        let tree = mcts_search(s, evaluator, cfg, rng)?;
        for (sum, &t) in sums.iter_mut().zip(temperatures) {
            let pi = tree.policy(t)?;
            let p = optimal_move_probability(&pi, &solved.optimal_actions).expect("non-losing states have optimal moves");
            *sum = *sum + p;
        }
        used += 1;
    }
    Ok(temperatures
        .iter()
        .zip(sums)
        .map(|(&temperature, sum)| ProbeRow {
            temperature,
            mean_p_optimal: if used == 0 { T::nan() } else { sum / T::from_count(used as u64) },
            states_used: used,
            states_skipped: skipped,
        })
        .collect())
}
