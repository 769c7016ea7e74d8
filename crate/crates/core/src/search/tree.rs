use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::{temperature_policy, Evaluator, PolicyDistribution, SearchError};
use crate::engines::{Action, GameState, ObservationKey, Outcome, Player};
use crate::num::Real;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig<T> {
    pub simulations: u32,
    pub c_puct: T,
    pub temperature: T,
    /// Random playouts averaged per leaf by the rollout evaluator.
    pub rollout_count: u32,
    /// Q used for actions that have not been visited yet.
    pub unvisited_q: T,
    pub seed: u64,
}

impl<T: Real> Default for SearchConfig<T> {
    fn default() -> Self {
        SearchConfig {
            simulations: 300,
            c_puct: T::lit(1.5),
            temperature: T::one(),
            rollout_count: 1,
            unvisited_q: T::zero(),
            seed: 0,
        }
    }
}

impl<T: Real> SearchConfig<T> {
    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |m: String| Err(SearchError::InvalidConfig(m));
        if self.simulations == 0 {
            return bad("simulations must be >= 1".into());
        }
        if !(self.c_puct > T::zero()) || !self.c_puct.is_finite() {
            return bad(format!("c_puct must be positive, got {}", self.c_puct));
        }
        if !(self.temperature >= T::zero()) || !self.temperature.is_finite() {
            return bad(format!("temperature must be >= 0, got {}", self.temperature));
        }
        if self.rollout_count == 0 {
            return bad("rollout_count must be >= 1".into());
        }
        if !self.unvisited_q.is_finite() {
            return bad("unvisited_q must be finite".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Child {
    Unexpanded,
    /// Game over after this action.
    Terminal(Outcome),
    Node(usize),
}

/// Per-state statistics. `Q(s,a) = value_sums[a] / visit_counts[a]` from the
/// point of view of `to_move`.
#[derive(Clone, Debug)]
pub struct SearchNode<T> {
    pub state_key: ObservationKey,
    pub to_move: Player,
    pub prior: PolicyDistribution<T>,
    pub visit_counts: Vec<u64>,
    pub value_sums: Vec<T>,
    pub children: Vec<Child>,
}

impl<T: Real> SearchNode<T> {
    pub fn new(state_key: ObservationKey, to_move: Player, prior: PolicyDistribution<T>) -> Self {
        let n = prior.len();
        SearchNode {
            state_key,
            to_move,
            prior,
            visit_counts: vec![0; n],
            value_sums: vec![T::zero(); n],
            children: vec![Child::Unexpanded; n],
        }
    }

    pub fn actions(&self) -> &[Action] {
        &self.prior.actions
    }

    pub fn total_visits(&self) -> u64 {
        self.visit_counts.iter().sum()
    }

    /// `None` for unvisited actions.
    pub fn q(&self, i: usize) -> Option<T> {
        (self.visit_counts[i] > 0).then(|| self.value_sums[i] / T::from_count(self.visit_counts[i]))
    }

    /// Exploration term `c * p(s,a) * sqrt(sum_b N(s,b)) / (1 + N(s,a))`.
    pub fn exploration(&self, i: usize, c_puct: T) -> T {
        let total = T::from_count(self.total_visits()).sqrt();
        c_puct * self.prior.probs[i] * total / (T::one() + T::from_count(self.visit_counts[i]))
    }
}

/// Index of `argmax_a Q(s,a) + U(s,a)`, lowest index on ties.
pub fn puct_select<T: Real>(node: &SearchNode<T>, c_puct: T, unvisited_q: T) -> usize {
    let mut best = 0;
    let mut best_score = T::neg_infinity();
    for i in 0..node.visit_counts.len() {
        let score = node.q(i).unwrap_or(unvisited_q) + node.exploration(i, c_puct);
        if score > best_score {
            best = i;
            best_score = score;
        }
    }
    best
}

/// Arena of nodes; index 0 is the root.
#[derive(Clone, Debug)]
pub struct SearchTree<T> {
    pub nodes: Vec<SearchNode<T>>,
}

impl<T: Real> SearchTree<T> {
    pub fn root(&self) -> &SearchNode<T> {
        &self.nodes[0]
    }

    /// Final move policy from the root visit counts.
    pub fn policy(&self, temperature: T) -> Result<PolicyDistribution<T>, SearchError> {
        let root = self.root();
        temperature_policy(root.actions(), &root.visit_counts, temperature)
    }
}

/// Sequential PUCT search from `state`. Leaf values are credited to the
/// player they belong to, so a side that moves twice in a row (Checkers
/// multi-jumps) is handled without sign flips.
pub fn mcts_search<T: Real>(
    state: &GameState,
    evaluator: &dyn Evaluator<T>,
    cfg: &SearchConfig<T>,
    rng: &mut dyn RngCore,
) -> Result<SearchTree<T>, SearchError> {
    cfg.validate()?;
    if state.is_terminal() {
        return Err(SearchError::Terminal);
    }
    let root_eval = evaluator.evaluate(state, rng)?;
    let mut tree = SearchTree { nodes: vec![SearchNode::new(state.observation_key(), state.to_move(), root_eval.prior)] };
    let mut path: Vec<(usize, usize)> = Vec::new();
    for _ in 0..cfg.simulations {
        path.clear();
        let mut s = state.clone();
        let mut node = 0;
        let (value, owner) = loop {
            let i = puct_select(&tree.nodes[node], cfg.c_puct, cfg.unvisited_q);
            path.push((node, i));
            let action = tree.nodes[node].prior.actions[i];
            match tree.nodes[node].children[i].clone() {
                Child::Node(next) => {
                    s.play(action)?;
                    node = next;
                }
                Child::Terminal(outcome) => {
                    let me = tree.nodes[node].to_move;
                    break (outcome_value(outcome, me), me);
                }
                Child::Unexpanded => {
                    s.play(action)?;
                    if s.is_terminal() {
                        tree.nodes[node].children[i] = Child::Terminal(s.outcome());
                        let me = tree.nodes[node].to_move;
                        break (outcome_value(s.outcome(), me), me);
                    }
                    let eval = evaluator.evaluate(&s, rng)?;
                    let idx = tree.nodes.len();
                    tree.nodes.push(SearchNode::new(s.observation_key(), s.to_move(), eval.prior));
                    tree.nodes[node].children[i] = Child::Node(idx);
                    break (eval.value, s.to_move());
                }
            }
        };
        for &(n, i) in path.iter().rev() {
            let node = &mut tree.nodes[n];
            let v = if node.to_move == owner { value } else { -value };
            node.visit_counts[i] += 1;
            node.value_sums[i] = node.value_sums[i] + v;
        }
    }
    Ok(tree)
}

fn outcome_value<T: Real>(outcome: Outcome, player: Player) -> T {
    T::from_i8(outcome.value_for(player).expect("terminal outcome")).expect("ternary value")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(q: &[f64], n: &[u64], p: &[f64]) -> SearchNode<f64> {
        let actions = (0..q.len() as u16).map(Action).collect();
        let mut node = SearchNode::new(
            ObservationKey::from_bytes(&[4]).unwrap(),
            Player::FIRST,
            PolicyDistribution::new(actions, p.to_vec()).unwrap(),
        );
        for i in 0..q.len() {
            node.visit_counts[i] = n[i];
            node.value_sums[i] = q[i] * n[i] as f64;
        }
        node
    }

    #[test]
    fn puct_example() {
        let n = node(&[0.5, 0.2], &[3, 1], &[0.5, 0.5]);
        assert!((n.exploration(0, 2.0) - 0.5).abs() < 1e-12);
        assert!((n.exploration(1, 2.0) - 1.0).abs() < 1e-12);
        assert_eq!(puct_select(&n, 2.0, 0.0), 1);
    }

    #[test]
    fn unvisited_ties_pick_lowest_index() {
        let n = node(&[0.0; 4], &[0; 4], &[0.25; 4]);
        assert_eq!(puct_select(&n, 1.0, 0.0), 0);
    }

    #[test]
    fn exploration_vanishes_with_visits() {
        let n = node(&[0.1, 0.3], &[1_000_000, 1_000_000], &[0.5, 0.5]);
        assert!(n.exploration(0, 1.5) < 2e-3);
        assert_eq!(puct_select(&n, 1.5, 0.0), 1);
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::<f64>::default().validate().is_ok());
        let bad = SearchConfig::<f64> { simulations: 0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = SearchConfig::<f64> { temperature: -0.1, ..Default::default() };
        assert!(bad.validate().is_err());
    }
}
