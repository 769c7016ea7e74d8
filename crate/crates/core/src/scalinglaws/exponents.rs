use serde::{Deserialize, Serialize};

use super::ScalingError;
use crate::num::Real;
use crate::zipfstats::{tail_exponent, FitOptions, RankCurve};

/// Elo points per decade of Bradley-Terry strength.
pub const ELO_SCALE: f64 = 400.0;

/// `alpha_N = alpha - 1`.
pub fn size_scaling_exponent<T: Real>(zipf_alpha: T) -> T {
    zipf_alpha - T::one()
}

pub fn zipf_from_scaling_exponent<T: Real>(alpha_n: T) -> T {
    alpha_n + T::one()
}

/// `400 log10(gamma) + anchor`.
pub fn gamma_to_elo<T: Real>(gamma: T, anchor: T) -> Result<T, ScalingError> {
    if !(gamma > T::zero()) || !gamma.is_finite() {
        return Err(ScalingError::Domain(format!("gamma must be positive, got {gamma}")));
    }
    Ok(T::lit(ELO_SCALE) * gamma.log10() + anchor)
}

pub fn elo_to_gamma<T: Real>(elo: T, anchor: T) -> Result<T, ScalingError> {
    if !elo.is_finite() || !anchor.is_finite() {
        return Err(ScalingError::Domain("non-finite Elo".into()));
    }
    Ok(T::lit(10.0).powf((elo - anchor) / T::lit(ELO_SCALE)))
}

/// Where the scaling-axis value of a row comes from.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalingSource {
    /// To be filled from outside data (e.g. Elo scaling of trained agents).
    External,
    Supplied,
}

/// One row of an exponent-correlation table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentPair<T> {
    pub temperature: T,
    pub zipf_alpha: T,
    pub fit_r2: T,
    pub split_rank: u64,
    pub fit_lo: u64,
    pub fit_hi: u64,
    pub unique_states: u64,
    /// `zipf_alpha - 1`, the exponent the quantization model predicts.
    pub predicted_alpha_n: T,
    pub scaling_alpha_n: Option<T>,
    pub scaling_source: ScalingSource,
}

/// Tail exponents (ranks above `split_rank`) for each `(temperature, curve)`
/// run. The scaling column is left empty and marked external.
pub fn exponent_correlation_dataset<T: Real>(
    runs: &[(T, RankCurve<T>)],
    split_rank: u64,
    opts: FitOptions,
) -> Result<Vec<ExponentPair<T>>, ScalingError> {
    if runs.len() < 2 {
        return Err(ScalingError::InsufficientRuns(runs.len()));
    }
    runs.iter()
        .map(|(t, curve)| {
            let fit = tail_exponent(curve, split_rank, opts)?;
            Ok(ExponentPair {
                temperature: *t,
                zipf_alpha: fit.alpha,
                fit_r2: fit.r_squared,
                split_rank,
                fit_lo: fit.lo,
                fit_hi: fit.hi,
                unique_states: curve.len(),
                predicted_alpha_n: size_scaling_exponent(fit.alpha),
                scaling_alpha_n: None,
                scaling_source: ScalingSource::External,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_mapping() {
        assert_eq!(size_scaling_exponent(1.0), 0.0);
        assert!((size_scaling_exponent(1.8f64) - 0.8).abs() < 1e-15);
        assert!((size_scaling_exponent(0.9f64) + 0.1).abs() < 1e-15);
        assert_eq!(zipf_from_scaling_exponent(size_scaling_exponent(1.25)), 1.25);
    }

    #[test]
    fn elo_conversions() {
        assert_eq!(gamma_to_elo(1.0, 0.0).unwrap(), 0.0);
        assert!((gamma_to_elo(10.0f64, 1500.0).unwrap() - 1900.0).abs() < 1e-9);
        assert!(gamma_to_elo(0.0, 0.0).is_err());
        assert!(gamma_to_elo(-2.0, 0.0).is_err());
        let elo = 1234.5f64;
        let back = gamma_to_elo(elo_to_gamma(elo, 1000.0).unwrap(), 1000.0).unwrap();
        assert!((back - elo).abs() < 1e-9);
    }

    #[test]
    fn dataset_rows() {
        let curve = RankCurve::from_frequencies((1..=200u64).map(|n| 1e4 * (n as f64).powf(-1.3)).collect()).unwrap();
        let rows = exponent_correlation_dataset(&[(0.1, curve.clone()), (0.5, curve.clone())], 20, FitOptions::default()).unwrap();
        assert_eq!(rows[0].zipf_alpha, rows[1].zipf_alpha);
        assert!((rows[0].zipf_alpha - 1.3).abs() < 1e-9);
        assert_eq!(rows[0].scaling_source, ScalingSource::External);
        assert_eq!(rows[0].scaling_alpha_n, None);
        assert!(matches!(exponent_correlation_dataset(&[(0.1, curve)], 20, FitOptions::default()), Err(ScalingError::InsufficientRuns(1))));
    }
}
