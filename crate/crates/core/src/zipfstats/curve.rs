use std::io::Write;

use serde::{Deserialize, Serialize};

use super::ZipfError;
use crate::harness::FrequencyTable;
use crate::num::Real;

/// Frequencies in non-increasing order. Index `i` holds rank `i + 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankCurve<T> {
    pub freqs: Vec<T>,
    /// Mean turn of the state at each rank, when known.
    pub mean_turns: Option<Vec<T>>,
    pub total: T,
}

impl<T: Real> RankCurve<T> {
    /// Sorts arbitrary frequencies into a curve.
    pub fn from_frequencies(mut freqs: Vec<T>) -> Result<Self, ZipfError> {
        if freqs.is_empty() {
            return Err(ZipfError::EmptyTable);
        }
        if let Some(i) = freqs.iter().position(|f| !(*f > T::zero()) || !f.is_finite()) {
            return Err(ZipfError::NonPositive(i as u64 + 1));
        }
        freqs.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        let total = freqs.iter().copied().sum();
        Ok(RankCurve { freqs, mean_turns: None, total })
    }

    pub fn len(&self) -> u64 {
        self.freqs.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    /// Frequency at 1-based `rank`.
    pub fn at(&self, rank: u64) -> T {
        self.freqs[(rank - 1) as usize]
    }

    /// Length of each run of equal frequencies, top down.
    pub fn plateau_widths(&self) -> Vec<u64> {
        let mut widths = Vec::new();
        let mut i = 0;
        while i < self.freqs.len() {
            let j = self.freqs[i..].iter().take_while(|f| **f == self.freqs[i]).count();
            widths.push(j as u64);
            i += j;
        }
        widths
    }

    /// First rank of the trailing run of equal frequencies, if that run has
    /// at least two members.
    pub fn tail_plateau_start(&self) -> Option<u64> {
        let last = *self.freqs.last()?;
        let run = self.freqs.iter().rev().take_while(|f| **f == last).count();
        (run >= 2).then(|| self.len() - run as u64 + 1)
    }
}

/// Curve of a table: counts descending, ties by ascending key bytes.
pub fn rank_curve<T: Real>(table: &FrequencyTable) -> Result<RankCurve<T>, ZipfError> {
    if table.is_empty() {
        return Err(ZipfError::EmptyTable);
    }
    let ranked = table.ranked();
    let freqs: Vec<T> = ranked.iter().map(|(_, e)| T::from_count(e.count)).collect();
    let turns = ranked.iter().map(|(_, e)| T::lit(e.mean_turn())).collect();
    let total = T::from_count(table.states_recorded());
    Ok(RankCurve { freqs, mean_turns: Some(turns), total })
}

/// `rank,frequency,mean_turn,cumulative_fraction`; `mean_turn` is empty
/// when unknown.
pub fn write_rank_csv<T: Real, W: Write>(mut w: W, curve: &RankCurve<T>) -> Result<(), ZipfError> {
    writeln!(w, "rank,frequency,mean_turn,cumulative_fraction")?;
    let mut cum = T::zero();
    for (i, &f) in curve.freqs.iter().enumerate() {
        cum = cum + f;
        let turn = curve.mean_turns.as_ref().map(|t| t[i].to_string()).unwrap_or_default();
        writeln!(w, "{},{},{},{}", i + 1, f, turn, cum / curve.total)?;
    }
    w.flush()?;
    Ok(())
}
