use serde::{Deserialize, Serialize};

use super::{RankCurve, ZipfError};
use crate::num::Real;

pub const MIN_FIT_POINTS: usize = 10;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitOptions {
    /// Number of log-uniformly spaced ranks to fit on. Ranges with fewer
    /// ranks use every rank.
    pub resample_points: usize,
    /// Keep the trailing run of equal frequencies (usually the count-1 tail).
    pub include_tail_plateau: bool,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { resample_points: 200, include_tail_plateau: false }
    }
}

/// `ln S(n) = log_intercept - alpha * ln n`, fitted over ranks `lo..=hi`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit<T> {
    pub alpha: T,
    #[serde(rename = "intercept")]
    pub log_intercept: T,
    #[serde(rename = "r2")]
    pub r_squared: T,
    pub lo: u64,
    /// Upper rank actually used, after any tail trimming.
    pub hi: u64,
    pub n_points: usize,
}

impl<T: Real> PowerLawFit<T> {
    pub fn predict(&self, rank: u64) -> T {
        (self.log_intercept - self.alpha * T::from_count(rank).ln()).exp()
    }
}

fn log_uniform_ranks(lo: u64, hi: u64, m: usize) -> Vec<u64> {
    if hi - lo + 1 <= m as u64 {
        return (lo..=hi).collect();
    }
    let (a, b) = ((lo as f64).ln(), (hi as f64).ln());
    let mut ranks: Vec<u64> = (0..m)
        .map(|i| ((a + (b - a) * i as f64 / (m - 1) as f64).exp().round() as u64).clamp(lo, hi))
        .collect();
    ranks.dedup();
    ranks
}

/// Least-squares line through `(ln n, ln S(n))` at log-uniformly spaced
/// ranks in `lo..=hi` (1-based).
pub fn fit_power_law<T: Real>(curve: &RankCurve<T>, lo: u64, hi: u64, opts: FitOptions) -> Result<PowerLawFit<T>, ZipfError> {
    let len = curve.len();
    if lo == 0 || lo > hi || hi > len {
        return Err(ZipfError::InvalidRange { lo, hi, len });
    }
    let mut hi = hi;
    if !opts.include_tail_plateau {
        if let Some(start) = curve.tail_plateau_start() {
            hi = hi.min(start.saturating_sub(1));
        }
    }
    let available = if hi >= lo { (hi - lo + 1) as usize } else { 0 };
    if available < MIN_FIT_POINTS {
        return Err(ZipfError::TooFewPoints { needed: MIN_FIT_POINTS, got: available });
    }
    let ranks = log_uniform_ranks(lo, hi, opts.resample_points.max(MIN_FIT_POINTS));
    let pts: Vec<(T, T)> = ranks
        .iter()
        .map(|&r| {
            let f = curve.at(r);
            if f > T::zero() {
                Ok((T::from_count(r).ln(), f.ln()))
            } else {
                Err(ZipfError::NonPositive(r))
            }
        })
        .collect::<Result<_, _>>()?;
    let n = T::from_count(pts.len() as u64);
    let mx = pts.iter().map(|p| p.0).sum::<T>() / n;
    let my = pts.iter().map(|p| p.1).sum::<T>() / n;
    let (mut sxx, mut sxy, mut syy) = (T::zero(), T::zero(), T::zero());
    for &(x, y) in &pts {
        sxx = sxx + (x - mx) * (x - mx);
        sxy = sxy + (x - mx) * (y - my);
        syy = syy + (y - my) * (y - my);
    }
    let slope = sxy / sxx;
    let r_squared = if syy > T::zero() { sxy * sxy / (sxx * syy) } else { T::one() };
    Ok(PowerLawFit { alpha: -slope, log_intercept: my - slope * mx, r_squared, lo, hi, n_points: pts.len() })
}

/// Fit over every rank above `split_rank`.
pub fn tail_exponent<T: Real>(curve: &RankCurve<T>, split_rank: u64, opts: FitOptions) -> Result<PowerLawFit<T>, ZipfError> {
    let len = curve.len();
    if split_rank + (MIN_FIT_POINTS as u64) >= len {
        return Err(ZipfError::TooFewPoints { needed: MIN_FIT_POINTS, got: len.saturating_sub(split_rank) as usize });
    }
    fit_power_law(curve, split_rank + 1, len, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn power(c: f64, alpha: f64, n: u64) -> RankCurve<f64> {
        RankCurve::from_frequencies((1..=n).map(|r| c * (r as f64).powf(-alpha)).collect()).unwrap()
    }

    #[test]
    fn exact_power_laws() {
        let f = fit_power_law(&power(1000.0, 1.0, 10_000), 1, 10_000, FitOptions::default()).unwrap();
        assert!((f.alpha - 1.0).abs() < 1e-6);
        assert!((f.log_intercept - 1000f64.ln()).abs() < 1e-6);
        assert!(f.r_squared > 1.0 - 1e-12);
        assert!(f.n_points <= 200 && f.n_points >= 150);
        let g = fit_power_law(&power(7.0, 0.8, 500), 3, 400, FitOptions::default()).unwrap();
        assert!((g.alpha - 0.8).abs() < 1e-9);
        assert_eq!((g.lo, g.hi), (3, 400));
    }

    #[test]
    fn tail_of_piecewise_curve() {
        let freqs: Vec<f64> = (1..=2000u64)
            .map(|n| if n <= 100 { 1e6 / n as f64 } else { 1e6 * 100.0 / (n as f64 * n as f64) })
            .collect();
        let c = RankCurve::from_frequencies(freqs).unwrap();
        let t = tail_exponent(&c, 100, FitOptions::default()).unwrap();
        assert!((t.alpha - 2.0).abs() < 1e-9);
        assert!(tail_exponent(&c, 1995, FitOptions::default()).is_err());
    }

    #[test]
    fn tail_plateau_is_trimmed_unless_requested() {
        let mut freqs: Vec<f64> = (1..=50u64).map(|n| 1e4 / n as f64).collect();
        freqs.extend(std::iter::repeat(1.0).take(30));
        let c = RankCurve::from_frequencies(freqs).unwrap();
        let trimmed = fit_power_law(&c, 1, 80, FitOptions::default()).unwrap();
        assert_eq!(trimmed.hi, 50);
        assert!((trimmed.alpha - 1.0).abs() < 1e-9);
        let kept = fit_power_law(&c, 1, 80, FitOptions { include_tail_plateau: true, ..FitOptions::default() }).unwrap();
        assert_eq!(kept.hi, 80);
        assert!(kept.r_squared < 1.0);
    }

    #[test]
    fn too_few_points_and_bad_ranges() {
        let c = power(1.0, 1.0, 50);
        assert!(matches!(fit_power_law(&c, 1, 9, FitOptions::default()), Err(ZipfError::TooFewPoints { .. })));
        assert!(matches!(fit_power_law(&c, 0, 20, FitOptions::default()), Err(ZipfError::InvalidRange { .. })));
        assert!(matches!(fit_power_law(&c, 1, 51, FitOptions::default()), Err(ZipfError::InvalidRange { .. })));
    }

    #[test]
    fn fit_json_field_names() {
        let f = fit_power_law(&power(1.0, 1.0, 20), 1, 20, FitOptions::default()).unwrap();
        let v = serde_json::to_value(f).unwrap();
        for k in ["alpha", "intercept", "r2", "lo", "hi", "n_points"] {
            assert!(v.get(k).is_some(), "missing {k}");
        }
    }
}
