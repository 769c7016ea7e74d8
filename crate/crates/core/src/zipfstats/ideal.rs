//! The ideal branching game: `b` moves per turn, `K` turns, every move
//! sequence a distinct state, uniform play. Its states are ranked by
//! 0-based index `n`, depth-1 states first.

use serde::{Deserialize, Serialize};

use super::ZipfError;
use crate::num::ExactScalar;

pub const MAX_BOUNDS_STATES: u128 = 10_000_000;

fn check_params(b: u32, k: u32) -> Result<(), ZipfError> {
    if b < 2 {
        return Err(ZipfError::InvalidParams(format!("branching factor {b} < 2")));
    }
    if k < 1 {
        return Err(ZipfError::InvalidParams("game length must be >= 1".into()));
    }
    Ok(())
}

/// Number of distinct states over depths 1..=K.
pub fn ideal_state_count(b: u32, k: u32) -> Result<u128, ZipfError> {
    check_params(b, k)?;
    let b = u128::from(b);
    let top = b.checked_pow(k + 1).ok_or_else(|| ZipfError::InvalidParams("state count overflows u128".into()))?;
    Ok((top - b) / (b - 1))
}

/// First index of plateau `t` (depth `t` states).
pub fn plateau_start(t: u32, b: u32) -> u128 {
    assert!(t >= 1 && b >= 2, "plateau_start needs t >= 1, b >= 2");
    let b = u128::from(b);
    (b.pow(t) - b) / (b - 1)
}

/// Depth of the state at index `n`: the largest `t` with `b^t <= (b-1)n + b`.
pub fn plateau_index(n: u128, b: u32) -> u32 {
    let b = u128::from(b);
    let x = (b - 1) * n + b;
    let (mut t, mut p) = (0u32, 1u128);
    while let Some(next) = p.checked_mul(b) {
        if next > x {
            break;
        }
        p = next;
        t += 1;
    }
    t
}

fn depth_denominator(t: u32, b: u32, k: u32) -> Result<u128, ZipfError> {
    u128::from(b)
        .checked_pow(t)
        .and_then(|p| p.checked_mul(u128::from(k)))
        .ok_or_else(|| ZipfError::InvalidParams("probability denominator overflows u128".into()))
}

/// Share of all recorded states taken by one particular depth-`t` state.
pub fn depth_probability<T: ExactScalar>(t: u32, b: u32, k: u32) -> Result<T, ZipfError> {
    check_params(b, k)?;
    if t < 1 || t > k {
        return Err(ZipfError::InvalidParams(format!("depth {t} outside 1..={k}")));
    }
    Ok(T::one() / T::from_integer(depth_denominator(t, b, k)?))
}

/// `P(n) = b^-t(n) / K` for 0-based index `n`.
pub fn ideal_probability<T: ExactScalar>(n: u128, b: u32, k: u32) -> Result<T, ZipfError> {
    let count = ideal_state_count(b, k)?;
    if n >= count {
        return Err(ZipfError::OutOfRange { n, count });
    }
    depth_probability(plateau_index(n, b), b, k)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub b: u32,
    pub k: u32,
    pub ranks: u128,
    /// Indices where `lower <= P(n) < upper` fails.
    pub violations: Vec<u128>,
    /// Indices where `P(n)` equals the lower bound.
    pub lower_equalities: Vec<u128>,
    /// Every plateau start, and nothing else, meets the lower bound.
    pub equality_exactly_at_starts: bool,
    /// max over n of `P/lower - 1`.
    pub max_lower_slack: f64,
    /// max over n of `upper/P - 1`.
    pub max_upper_slack: f64,
    /// min over n of `upper/P - 1`; positive when the upper bound is strict.
    pub min_upper_slack: f64,
    pub plateau_widths: Vec<u128>,
    /// `|sum_n P(n) - 1|`.
    pub sum_error: f64,
}

impl BoundsReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
            && self.equality_exactly_at_starts
            && self.plateau_widths.iter().enumerate().all(|(i, &w)| w == u128::from(self.b).pow(i as u32 + 1))
    }
}

/// Checks `1/(K((b-1)n+b)) <= P(n) < b/(K((b-1)n+b))` at every index, in
/// the scalar `T` (use a rational type for an exact check).
pub fn bounds_check<T: ExactScalar>(b: u32, k: u32) -> Result<BoundsReport, ZipfError> {
    let ranks = ideal_state_count(b, k)?;
    if ranks > MAX_BOUNDS_STATES {
        return Err(ZipfError::TooLarge(ranks));
    }
    let bb = u128::from(b);
    let kk = u128::from(k);
    let mut report = BoundsReport {
        b,
        k,
        ranks,
        violations: Vec::new(),
        lower_equalities: Vec::new(),
        equality_exactly_at_starts: true,
        max_lower_slack: 0.0,
        max_upper_slack: 0.0,
        min_upper_slack: f64::INFINITY,
        plateau_widths: vec![0; k as usize],
        sum_error: 0.0,
    };
    let starts: Vec<u128> = (1..=k).map(|t| plateau_start(t, b)).collect();
    let mut sum = T::zero();
    for n in 0..ranks {
        let t = plateau_index(n, b);
        report.plateau_widths[(t - 1) as usize] += 1;
        let p: T = depth_probability(t, b, k)?;
        let line = kk * ((bb - 1) * n + bb);
        let lower = T::one() / T::from_integer(line);
        let upper = T::from_integer(bb) / T::from_integer(line);
        if !(lower <= p && p < upper) {
            report.violations.push(n);
        }
        let at_start = starts[(t - 1) as usize] == n;
        if p == lower {
            report.lower_equalities.push(n);
        }
        if (p == lower) != at_start {
            report.equality_exactly_at_starts = false;
        }
        let (pf, lf, uf) = (p.to_f64_lossy(), lower.to_f64_lossy(), upper.to_f64_lossy());
        report.max_lower_slack = report.max_lower_slack.max(pf / lf - 1.0);
        report.max_upper_slack = report.max_upper_slack.max(uf / pf - 1.0);
        report.min_upper_slack = report.min_upper_slack.min(uf / pf - 1.0);
        sum = sum + p;
    }
    report.sum_error = (sum - T::one()).to_f64_lossy().abs();
    Ok(report)
}
