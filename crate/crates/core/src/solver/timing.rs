use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::{Solver, SolverError};
use crate::engines::GameState;

/// CPU time consumed by the calling thread.
pub fn thread_cpu_time() -> Duration {
    let mut ts = libc::timespec { tv_sec: 0, tv_nsec: 0 };
    // SAFETY: `ts` is a valid, writable timespec for the duration of the call.
    let rc = unsafe { libc::clock_gettime(libc::CLOCK_THREAD_CPUTIME_ID, &mut ts) };
    if rc != 0 {
        return Duration::ZERO;
    }
    Duration::new(ts.tv_sec as u64, ts.tv_nsec as u32)
}

/// Half-open range of 1-indexed ranks `[lo, hi)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankBucket {
    pub lo: u64,
    pub hi: u64,
}

impl RankBucket {
    /// `[10^d, 10^(d+1))` for `d` in `0..decades`.
    pub fn decades(decades: u32) -> Vec<RankBucket> {
        (0..decades).map(|d| RankBucket { lo: 10u64.pow(d), hi: 10u64.pow(d + 1) }).collect()
    }

    pub fn contains(&self, rank: u64) -> bool {
        (self.lo..self.hi).contains(&rank)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BucketTiming {
    pub bucket: RankBucket,
    pub states: usize,
    /// Geometric mean of CPU seconds.
    pub geo_mean_secs: f64,
    /// Geometric standard deviation (a factor, 1 = no spread).
    pub geo_std: f64,
    pub geo_mean_nodes: f64,
}

/// Floor for timings so that a clock tick of zero does not break the logs.
const MIN_SECS: f64 = 1e-9;

fn geometric(xs: &[f64]) -> (f64, f64) {
    let logs: Vec<f64> = xs.iter().map(|x| x.max(MIN_SECS).ln()).collect();
    let n = logs.len() as f64;
    let mean = logs.iter().sum::<f64>() / n;
    let var = logs.iter().map(|l| (l - mean).powi(2)).sum::<f64>() / n;
    (mean.exp(), var.sqrt().exp())
}

/// Solves every `(rank, state)` from a cold table and reports geometric
/// timing statistics per bucket. Buckets with no states are left out.
pub fn solve_timed(
    solver: &mut Solver,
    states: &[(u64, GameState)],
    buckets: &[RankBucket],
) -> Result<Vec<BucketTiming>, SolverError> {
    let mut samples: Vec<(Vec<f64>, Vec<f64>)> = vec![(Vec::new(), Vec::new()); buckets.len()];
    for (rank, state) in states {
        let Some(i) = buckets.iter().position(|b| b.contains(*rank)) else { continue };
        solver.clear();
        let r = solver.solve(state)?;
        samples[i].0.push(r.cpu_time.as_secs_f64());
        samples[i].1.push(r.nodes_visited as f64);
    }
    Ok(buckets
        .iter()
        .zip(samples)
        .filter(|(_, (t, _))| !t.is_empty())
        .map(|(&bucket, (times, nodes))| {
            let (geo_mean_secs, geo_std) = geometric(&times);
            BucketTiming { bucket, states: times.len(), geo_mean_secs, geo_std, geo_mean_nodes: geometric(&nodes).0 }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValueLossReport {
    /// `(z - v)^2` per input state, in input order.
    pub per_state: Vec<f64>,
    /// `(bucket, states, mean loss)` for buckets that received states.
    pub buckets: Vec<(RankBucket, usize, f64)>,
}

/// Value loss of mover-relative estimates against solved values. `ranks`
/// (parallel to `estimates`) enables the bucketed means.
pub fn ground_truth_value_loss(
    solver: &mut Solver,
    estimates: &[(GameState, f64)],
    ranks: Option<&[u64]>,
    buckets: &[RankBucket],
) -> Result<ValueLossReport, SolverError> {
    if let Some(r) = ranks {
        if r.len() != estimates.len() {
            return Err(SolverError::Input(format!("{} ranks for {} states", r.len(), estimates.len())));
        }
    }
    let mut per_state = Vec::with_capacity(estimates.len());
    for (state, v) in estimates {
        let z = f64::from(solver.value(state)?);
        per_state.push((z - v).powi(2));
    }
    let mut out = Vec::new();
    if let Some(ranks) = ranks {
        for &b in buckets {
            let losses: Vec<f64> =
                ranks.iter().zip(&per_state).filter(|(r, _)| b.contains(**r)).map(|(_, &l)| l).collect();
            if !losses.is_empty() {
                out.push((b, losses.len(), losses.iter().sum::<f64>() / losses.len() as f64));
            }
        }
    }
    Ok(ValueLossReport { per_state, buckets: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_states_have_unit_spread() {
        let s = GameState::connect_four_from_moves(4, 4, "0123").unwrap();
        let states: Vec<_> = (1..=5).map(|r| (r, s.clone())).collect();
        let mut solver = Solver::default();
        let t = solve_timed(&mut solver, &states, &RankBucket::decades(3)).unwrap();
        // ranks 1..=5 all land in the first decade; the other two are omitted
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].states, 5);
        // identical samples have no dispersion
        assert!((geometric(&[7.0; 4]).1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn value_loss_arithmetic() {
        let win = GameState::connect_four_from_moves(5, 4, "010101").unwrap();
        let mut solver = Solver::default();
        let r = ground_truth_value_loss(&mut solver, &[(win.clone(), 1.0), (win, 0.0)], Some(&[1, 20]), &RankBucket::decades(2))
            .unwrap();
        assert_eq!(r.per_state, vec![0.0, 1.0]);
        assert_eq!(r.buckets.len(), 2);
    }
}
