use serde::{Deserialize, Serialize};

use super::{FrequencyTable, HarnessError};

/// Turn statistics of the state at one rank (1-based).
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankTurn {
    pub rank: u64,
    pub count: u64,
    pub mean_turn: f64,
    pub var_turn: f64,
    /// Share of states in the centred rank window whose mean turn exceeds
    /// the late-game threshold.
    pub late_fraction: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TurnStats {
    pub late_threshold: f64,
    pub window: usize,
    pub ranks: Vec<RankTurn>,
}

impl TurnStats {
    pub fn mean_turns(&self) -> Vec<f64> {
        self.ranks.iter().map(|r| r.mean_turn).collect()
    }

    /// Count-weighted mean turn over ranks `lo..=hi` (1-based, clipped).
    pub fn weighted_mean_turn(&self, lo: u64, hi: u64) -> Option<f64> {
        let (mut w, mut s) = (0.0, 0.0);
        for r in self.ranks.iter().filter(|r| r.rank >= lo && r.rank <= hi) {
            w += r.count as f64;
            s += r.count as f64 * r.mean_turn;
        }
        (w > 0.0).then(|| s / w)
    }
}

/// Per-rank turn statistics for the first `max_ranks` ranks (all if `None`).
///
/// A state counts as late-game when its mean turn is above `late_threshold`;
/// `late_fraction` averages that indicator over the `window` ranks centred on
/// each rank, clipped at the ends.
pub fn turn_statistics(
    table: &FrequencyTable,
    late_threshold: f64,
    window: usize,
    max_ranks: Option<usize>,
) -> Result<TurnStats, HarnessError> {
    if table.is_empty() {
        return Err(HarnessError::EmptyTable);
    }
    if window == 0 {
        return Err(HarnessError::Config("window must be >= 1".into()));
    }
    let mut ranked = table.ranked();
    if let Some(m) = max_ranks {
        ranked.truncate(m.max(1));
    }
    let late: Vec<u64> = ranked.iter().map(|(_, e)| u64::from(e.mean_turn() > late_threshold)).collect();
    let mut prefix = vec![0u64; late.len() + 1];
    for (i, l) in late.iter().enumerate() {
        prefix[i + 1] = prefix[i] + l;
    }
    let half = window / 2;
    let n = ranked.len();
    let ranks = ranked
        .iter()
        .enumerate()
        .map(|(i, (_, e))| {
            let lo = i.saturating_sub(half);
            let hi = (lo + window).min(n);
            let lo = hi.saturating_sub(window);
            RankTurn {
                rank: i as u64 + 1,
                count: e.count,
                mean_turn: e.mean_turn(),
                var_turn: e.turn_variance(),
                late_fraction: (prefix[hi] - prefix[lo]) as f64 / (hi - lo) as f64,
            }
        })
        .collect();
    Ok(TurnStats { late_threshold, window, ranks })
}

fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            out[k] = r;
        }
        i = j + 1;
    }
    out
}

/// Spearman rank correlation with average ranks for ties. `None` for fewer
/// than two points or a constant input.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Option<f64> {
    assert_eq!(xs.len(), ys.len(), "spearman inputs differ in length");
    if xs.len() < 2 {
        return None;
    }
    let (rx, ry) = (average_ranks(xs), average_ranks(ys));
    let n = xs.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    (sxx > 0.0 && syy > 0.0).then(|| sxy / (sxx * syy).sqrt())
}
