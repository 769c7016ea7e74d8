use std::sync::Mutex;

use rand::{Rng, RngCore};

use super::{PolicyDistribution, SearchError};
use crate::engines::GameState;
use crate::num::Real;
use crate::solver::{Solver, SolverConfig};

/// Value estimate in [-1, 1] for the side to move, plus a prior over the
/// legal actions.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation<T> {
    pub value: T,
    pub prior: PolicyDistribution<T>,
}

/// Leaf evaluator used by the tree search. Implementations are shared
/// between concurrent searches.
pub trait Evaluator<T: Real>: Send + Sync {
    fn evaluate(&self, state: &GameState, rng: &mut dyn RngCore) -> Result<Evaluation<T>, SearchError>;
}

/// Uniform prior; value is the mean outcome of uniformly random playouts.
#[derive(Clone, Debug)]
pub struct RolloutEvaluator {
    pub rollouts: u32,
}

impl RolloutEvaluator {
    pub fn new(rollouts: u32) -> Self {
        RolloutEvaluator { rollouts: rollouts.max(1) }
    }
}

impl Default for RolloutEvaluator {
    fn default() -> Self {
        RolloutEvaluator::new(1)
    }
}

/// Plays uniformly random moves from `state` to the end and returns the
/// outcome for the player to move at `state`.
pub fn random_playout(state: &GameState, rng: &mut dyn RngCore) -> Result<i8, SearchError> {
    let me = state.to_move();
    let mut s = state.clone();
    let mut legal = Vec::new();
    while !s.is_terminal() {
        s.legal_actions_into(&mut legal)?;
        s.play(legal[rng.random_range(0..legal.len())])?;
    }
    Ok(s.outcome().value_for(me).expect("terminal"))
}

impl<T: Real> Evaluator<T> for RolloutEvaluator {
    fn evaluate(&self, state: &GameState, rng: &mut dyn RngCore) -> Result<Evaluation<T>, SearchError> {
        let prior = PolicyDistribution::uniform(state.legal_actions()?);
        let mut total = 0i64;
        for _ in 0..self.rollouts {
            total += i64::from(random_playout(state, rng)?);
        }
        let value = T::from_i64(total).expect("small integer") / T::from_count(u64::from(self.rollouts));
        Ok(Evaluation { value, prior })
    }
}

/// Exact values from the Connect Four solver with a uniform prior.
pub struct SolverEvaluator {
    solver: Mutex<Solver>,
}

impl SolverEvaluator {
    pub fn new(cfg: SolverConfig) -> Self {
        SolverEvaluator { solver: Mutex::new(Solver::new(cfg)) }
    }
}

impl<T: Real> Evaluator<T> for SolverEvaluator {
    fn evaluate(&self, state: &GameState, _rng: &mut dyn RngCore) -> Result<Evaluation<T>, SearchError> {
        let prior = PolicyDistribution::uniform(state.legal_actions()?);
        let v = self.solver.lock().unwrap_or_else(|e| e.into_inner()).value(state)?;
        Ok(Evaluation { value: T::from_i8(v).expect("ternary value"), prior })
    }
}
