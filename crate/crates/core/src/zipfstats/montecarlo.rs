use serde::{Deserialize, Serialize};

use super::ZipfError;
use crate::engines::{GameId, GameState, ToyParams};
use crate::harness::FrequencyTable;

/// Sampled toy-game table against the exact per-state probabilities.
///
/// A depth-`t` state occurs at most once per game, with probability
/// `q = b^-t`, so its count over `G` games is Binomial(G, q). `z` scores use
/// that standard deviation; states never seen are included.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdealComparison {
    pub games: u64,
    pub states_expected: u128,
    pub states_seen: u64,
    pub max_abs_z: f64,
    /// Hex key of the worst seen state, or `None` if an unseen state is worst.
    pub worst_key: Option<String>,
    /// States whose |z| exceeds `threshold`, unseen ones included.
    pub beyond_threshold: u128,
    pub threshold: f64,
}

pub fn compare_with_ideal(table: &FrequencyTable, params: &ToyParams, threshold: f64) -> Result<IdealComparison, ZipfError> {
    if table.game() != GameId::ToyIdeal {
        return Err(ZipfError::InvalidParams(format!("expected a toy table, got {}", table.game())));
    }
    if !table.is_complete() {
        return Err(ZipfError::InvalidParams("the table was prefiltered".into()));
    }
    let (b, k) = (u32::from(params.branching), params.length);
    let g = table.games_played() as f64;
    if g == 0.0 {
        return Err(ZipfError::EmptyTable);
    }
    let q_of = |t: u32| (b as f64).powi(-(t as i32));
    let z_of = |count: u64, t: u32| {
        let q = q_of(t);
        (count as f64 - g * q) / (g * q * (1.0 - q)).sqrt()
    };
    let mut seen_per_depth = vec![0u128; k as usize + 1];
    let mut out = IdealComparison {
        games: table.games_played(),
        states_expected: super::ideal_state_count(b, k)?,
        states_seen: 0,
        max_abs_z: 0.0,
        worst_key: None,
        beyond_threshold: 0,
        threshold,
    };
    for (key, e) in table.iter() {
        let s = GameState::from_observation_key(key, Some(params)).map_err(|e| ZipfError::InvalidParams(e.to_string()))?;
        let t = s.turn();
        if t == 0 || t > k {
            return Err(ZipfError::InvalidParams(format!("state at depth {t} outside 1..={k}")));
        }
        seen_per_depth[t as usize] += 1;
        out.states_seen += 1;
        let z = z_of(e.count, t).abs();
        if z > threshold {
            out.beyond_threshold += 1;
        }
        if z > out.max_abs_z {
            out.max_abs_z = z;
            out.worst_key = Some(key.to_hex());
        }
    }
    for t in 1..=k {
        let missing = u128::from(b).pow(t) - seen_per_depth[t as usize];
        if missing > 0 {
            let z = z_of(0, t).abs();
            if z > threshold {
                out.beyond_threshold += missing;
            }
            if z > out.max_abs_z {
                out.max_abs_z = z;
                out.worst_key = None;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::Action;

    #[test]
    fn exact_counts_have_zero_z() {
        // b = 2, K = 2 with all four games played once: every depth-t state
        // appears exactly G b^-t times.
        let p = ToyParams::new(2, 2).unwrap();
        let mut t = FrequencyTable::new(GameId::ToyIdeal);
        let root = GameState::new(GameId::ToyIdeal, Some(&p)).unwrap();
        for a in 0..2 {
            for c in 0..2 {
                let s1 = root.apply(Action(a)).unwrap();
                let s2 = s1.apply(Action(c)).unwrap();
                t.record(s1.observation_key(), 1);
                t.record(s2.observation_key(), 2);
                t.finish_game();
            }
        }
        let r = compare_with_ideal(&t, &p, 5.0).unwrap();
        assert_eq!(r.states_seen, 6);
        assert_eq!(r.states_expected, 6);
        assert!(r.max_abs_z < 1e-12);
        assert_eq!(r.beyond_threshold, 0);
    }
}
