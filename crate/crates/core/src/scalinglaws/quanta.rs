use serde::{Deserialize, Serialize};

use super::zeta::{power_sum, riemann_zeta};
use super::ScalingError;
use crate::num::Real;

/// Quanta ordered by use frequency `p_k ∝ k^-(alpha+1)`; learning one
/// removes `delta_l` of loss scaled by its frequency.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantizationParams<T> {
    pub alpha: T,
    #[serde(rename = "delta_L")]
    pub delta_l: T,
    #[serde(rename = "L_inf")]
    pub l_inf: T,
    /// Parameters per quantum.
    pub capacity: T,
}

impl<T: Real> QuantizationParams<T> {
    pub fn new(alpha: T, delta_l: T, l_inf: T) -> Self {
        QuantizationParams { alpha, delta_l, l_inf, capacity: T::one() }
    }

    pub fn validate(&self) -> Result<(), ScalingError> {
        let finite = [self.alpha, self.delta_l, self.l_inf, self.capacity].iter().all(|v| v.is_finite());
        if !finite || self.alpha <= T::zero() || self.delta_l < T::zero() || self.l_inf < T::zero() || self.capacity <= T::zero() {
            return Err(ScalingError::Domain(format!(
                "alpha {} > 0, delta_L {} >= 0, L_inf {} >= 0, capacity {} > 0 required",
                self.alpha, self.delta_l, self.l_inf, self.capacity
            )));
        }
        Ok(())
    }

    /// Quanta learned by a model with `params` parameters.
    pub fn quanta_for(&self, params: T) -> T {
        params / self.capacity
    }
}

/// `delta_L / (alpha zeta(alpha+1)) * n^(1-alpha) + L_inf` for real `n > 0`.
pub fn expected_loss_real<T: Real>(n: T, q: &QuantizationParams<T>) -> Result<T, ScalingError> {
    q.validate()?;
    if q.alpha == T::one() {
        return Err(ScalingError::DegenerateAlpha);
    }
    if !(n > T::zero()) {
        return Err(ScalingError::Domain(format!("n must be positive, got {n}")));
    }
    let z = riemann_zeta(q.alpha + T::one())?;
    Ok(q.delta_l / (q.alpha * z) * n.powf(T::one() - q.alpha) + q.l_inf)
}

/// Expected loss after learning the `n` most frequent quanta.
pub fn expected_loss_quanta<T: Real>(n: u64, q: &QuantizationParams<T>) -> Result<T, ScalingError> {
    if n == 0 {
        return Err(ScalingError::Domain("n must be >= 1".into()));
    }
    expected_loss_real(T::from_count(n), q)
}

/// Loss from summing the unlearned frequencies directly.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BruteForceLoss<T> {
    /// `delta_L * sum_{k=n+1}^{cutoff} k^-(alpha+1) / zeta(alpha+1) + L_inf`.
    pub value: T,
    /// Bounds on the omitted `k > cutoff` part, same scaling.
    pub remainder_lo: T,
    pub remainder_hi: T,
}

impl<T: Real> BruteForceLoss<T> {
    /// Interval that contains the cutoff-free loss.
    pub fn limit_bounds(&self) -> (T, T) {
        (self.value + self.remainder_lo, self.value + self.remainder_hi)
    }

    pub fn midpoint(&self) -> T {
        self.value + (self.remainder_lo + self.remainder_hi) / T::lit(2.0)
    }
}

/// Tail-sum loss, truncated at `cutoff >= max(10 n, 1)`. The remainder
/// bounds come from `int_{C+1}^inf` and `int_C^inf` of `x^-(alpha+1)`.
pub fn brute_force_quanta_loss<T: Real>(n: u64, q: &QuantizationParams<T>, cutoff: u64) -> Result<BruteForceLoss<T>, ScalingError> {
    q.validate()?;
    let needed = n.saturating_mul(10).max(1);
    if cutoff < needed {
        return Err(ScalingError::CutoffTooSmall { cutoff, needed });
    }
    let s = q.alpha + T::one();
    let scale = q.delta_l / riemann_zeta(s)?;
    let partial = if cutoff > n { power_sum(s, n + 1, cutoff) } else { T::zero() };
    let c = T::from_count(cutoff);
    Ok(BruteForceLoss {
        value: scale * partial + q.l_inf,
        remainder_lo: scale * (c + T::one()).powf(-q.alpha) / q.alpha,
        remainder_hi: scale * c.powf(-q.alpha) / q.alpha,
    })
}

/// Log-log slopes of `L - L_inf` between `n1` and `n2` for the closed form
/// and for the tail sum. They differ by one for the same `alpha`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentDiscrepancy<T> {
    pub formula_slope: T,
    pub brute_force_slope: T,
}

pub fn exponent_discrepancy<T: Real>(q: &QuantizationParams<T>, n1: u64, n2: u64, cutoff_factor: u64) -> Result<ExponentDiscrepancy<T>, ScalingError> {
    if n1 == 0 || n2 <= n1 {
        return Err(ScalingError::Domain(format!("need 0 < n1 < n2, got {n1}, {n2}")));
    }
    let span = (T::from_count(n2) / T::from_count(n1)).ln();
    let f1 = expected_loss_quanta(n1, q)? - q.l_inf;
    let f2 = expected_loss_quanta(n2, q)? - q.l_inf;
    let b1 = brute_force_quanta_loss(n1, q, n1 * cutoff_factor)?.midpoint() - q.l_inf;
    let b2 = brute_force_quanta_loss(n2, q, n2 * cutoff_factor)?.midpoint() - q.l_inf;
    Ok(ExponentDiscrepancy { formula_slope: (f2 / f1).ln() / span, brute_force_slope: (b2 / b1).ln() / span })
}

/// Closed-form and tail-sum losses side by side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelCurveReport<T> {
    pub alpha: T,
    #[serde(rename = "delta_L")]
    pub delta_l: T,
    #[serde(rename = "L_inf")]
    pub l_inf: T,
    /// `(n, L_formula, L_bruteforce)`.
    pub points: Vec<(u64, T, T)>,
}

pub fn model_curve_report<T: Real>(q: &QuantizationParams<T>, ns: &[u64], cutoff_factor: u64) -> Result<ModelCurveReport<T>, ScalingError> {
    let points = ns
        .iter()
        .map(|&n| {
            let formula = expected_loss_quanta(n, q)?;
            let brute = brute_force_quanta_loss(n, q, n.max(1) * cutoff_factor.max(10))?.midpoint();
            Ok((n, formula, brute))
        })
        .collect::<Result<_, ScalingError>>()?;
    Ok(ModelCurveReport { alpha: q.alpha, delta_l: q.delta_l, l_inf: q.l_inf, points })
}
