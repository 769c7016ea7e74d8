use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use super::SearchError;
use crate::engines::Action;
use crate::num::Real;

/// Probabilities over an explicit list of actions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolicyDistribution<T> {
    pub actions: Vec<Action>,
    pub probs: Vec<T>,
}

impl<T: Real> PolicyDistribution<T> {
    /// Validates lengths, signs and normalisation (within 1e-12, or a few
    /// ulps for `f32`).
    pub fn new(actions: Vec<Action>, probs: Vec<T>) -> Result<Self, SearchError> {
        if actions.len() != probs.len() || actions.is_empty() {
            return Err(SearchError::InvalidDistribution(format!(
                "{} actions, {} probabilities",
                actions.len(),
                probs.len()
            )));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < T::zero()) {
            return Err(SearchError::InvalidDistribution("negative or non-finite probability".into()));
        }
        let sum: T = probs.iter().copied().sum();
        let tol = T::lit(1e-12).max(T::epsilon() * T::lit(64.0));
        if (sum - T::one()).abs() > tol {
            return Err(SearchError::InvalidDistribution(format!("probabilities sum to {sum}")));
        }
        Ok(PolicyDistribution { actions, probs })
    }

    pub fn uniform(actions: Vec<Action>) -> Self {
        let p = T::one() / T::from_count(actions.len() as u64);
        let probs = vec![p; actions.len()];
        PolicyDistribution { actions, probs }
    }

    pub fn one_hot(actions: Vec<Action>, index: usize) -> Self {
        let mut probs = vec![T::zero(); actions.len()];
        probs[index] = T::one();
        PolicyDistribution { actions, probs }
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn prob_of(&self, action: Action) -> T {
        self.actions.iter().position(|&a| a == action).map_or(T::zero(), |i| self.probs[i])
    }

    /// Index of the largest probability, lowest index on ties.
    pub fn argmax(&self) -> usize {
        argmax_by(&self.probs)
    }

    /// Draws an action; zero-probability actions are never returned.
    pub fn sample(&self, rng: &mut dyn RngCore) -> Action {
        let u = T::lit(rng.random::<f64>());
        let mut acc = T::zero();
        let mut last = 0;
        for (i, &p) in self.probs.iter().enumerate() {
            if p <= T::zero() {
                continue;
            }
            acc = acc + p;
            last = i;
            if u < acc {
                return self.actions[i];
            }
        }
        self.actions[last]
    }
}

fn argmax_by<V: PartialOrd + Copy>(xs: &[V]) -> usize {
    let mut best = 0;
    for (i, x) in xs.iter().enumerate() {
        if *x > xs[best] {
            best = i;
        }
    }
    best
}

/// `pi(a) = N(a)^(1/T) / sum_b N(b)^(1/T)`, evaluated in log space so very
/// small temperatures do not overflow. `T = 0` is the argmax (lowest index
/// on ties).
pub fn temperature_policy<T: Real>(
    actions: &[Action],
    counts: &[u64],
    temperature: T,
) -> Result<PolicyDistribution<T>, SearchError> {
    if actions.len() != counts.len() || actions.is_empty() {
        return Err(SearchError::InvalidDistribution(format!("{} actions, {} counts", actions.len(), counts.len())));
    }
    if !(temperature >= T::zero()) || !temperature.is_finite() {
        return Err(SearchError::InvalidConfig(format!("temperature must be finite and >= 0, got {temperature}")));
    }
    if counts.iter().all(|&c| c == 0) {
        return Err(SearchError::ZeroCounts);
    }
    if temperature == T::zero() {
        return Ok(PolicyDistribution::one_hot(actions.to_vec(), argmax_by(counts)));
    }
    let inv_t = T::one() / temperature;
    let logs: Vec<T> = counts
        .iter()
        .map(|&c| if c == 0 { T::neg_infinity() } else { T::from_count(c).ln() * inv_t })
        .collect();
    let shift = logs.iter().copied().fold(T::neg_infinity(), T::max);
    let weights: Vec<T> = logs.iter().map(|&l| (l - shift).exp()).collect();
    let total: T = weights.iter().copied().sum();
    Ok(PolicyDistribution { actions: actions.to_vec(), probs: weights.into_iter().map(|w| w / total).collect() })
}

/// Probability mass `pi` puts on `optimal`. `None` when the optimal set is
/// empty: such states are skipped by the probe.
pub fn optimal_move_probability<T: Real>(pi: &PolicyDistribution<T>, optimal: &[Action]) -> Option<T> {
    if optimal.is_empty() {
        return None;
    }
    Some(pi.actions.iter().zip(&pi.probs).filter(|(a, _)| optimal.contains(a)).map(|(_, &p)| p).sum())
}
