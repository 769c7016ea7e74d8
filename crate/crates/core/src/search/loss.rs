use serde::{Deserialize, Serialize};

use super::{PolicyDistribution, SearchError};
use crate::num::Real;

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LossTerms<T> {
    pub value_loss: T,
    pub policy_loss: T,
    pub total: T,
}

/// `(z - v)^2 - sum_a pi(a) ln p(a)`. `pi` and `p` must list the same
/// actions in the same order, and `p` must be positive wherever `pi` is.
pub fn composite_loss<T: Real>(
    z: T,
    v: T,
    pi: &PolicyDistribution<T>,
    p: &PolicyDistribution<T>,
) -> Result<LossTerms<T>, SearchError> {
    if pi.actions != p.actions {
        return Err(SearchError::InvalidDistribution("target and prediction cover different actions".into()));
    }
    let mut policy_loss = T::zero();
    for ((&a, &t), &q) in pi.actions.iter().zip(&pi.probs).zip(&p.probs) {
        if t > T::zero() {
            if q <= T::zero() {
                return Err(SearchError::ZeroProbability(a));
            }
            policy_loss = policy_loss - t * q.ln();
        }
    }
    let value_loss = (z - v) * (z - v);
    Ok(LossTerms { value_loss, policy_loss, total: value_loss + policy_loss })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::Action;

    fn dist(p: &[f64]) -> PolicyDistribution<f64> {
        PolicyDistribution::new((0..p.len() as u16).map(Action).collect(), p.to_vec()).unwrap()
    }

    #[test]
    fn worked_example() {
        let l = composite_loss(1.0, 0.5, &dist(&[1.0, 0.0]), &dist(&[0.5, 0.5])).unwrap();
        assert!((l.value_loss - 0.25).abs() < 1e-15);
        assert!((l.policy_loss - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((l.total - 0.943_147_180_559_945_3).abs() < 1e-12);
    }

    #[test]
    fn self_cross_entropy_is_entropy() {
        let p = dist(&[0.2, 0.3, 0.5]);
        let h: f64 = -p.probs.iter().map(|x| x * x.ln()).sum::<f64>();
        let l = composite_loss(0.3, 0.3, &p, &p).unwrap();
        assert_eq!(l.value_loss, 0.0);
        assert!((l.policy_loss - h).abs() < 1e-15);
    }

    #[test]
    fn zero_prediction_under_target_mass_is_an_error() {
        let e = composite_loss(0.0, 0.0, &dist(&[0.5, 0.5]), &dist(&[1.0, 0.0]));
        assert_eq!(e, Err(SearchError::ZeroProbability(Action(1))));
    }
}
