//! Independent reference implementations shared by the integration tests.
//! Nothing here calls into the code under test beyond the game engines.
#![allow(dead_code)]

use std::collections::HashMap;

use gzl_core::{Action, GameState, ObservationKey, Outcome};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Plain negamax over engine states, memoised on observation keys (no
/// pruning, no move ordering). Returns the mover-relative value.
pub struct NegamaxOracle {
    memo: HashMap<ObservationKey, i8>,
}

impl NegamaxOracle {
    pub fn new() -> Self {
        NegamaxOracle { memo: HashMap::new() }
    }

    pub fn value(&mut self, s: &GameState) -> i8 {
        match s.outcome() {
            Outcome::Ongoing => {}
            o => return o.value_for(s.to_move()).unwrap(),
        }
        let key = s.observation_key();
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = s.legal_actions().unwrap().into_iter().map(|a| -self.value(&s.apply(a).unwrap())).max().unwrap();
        self.memo.insert(key, v);
        v
    }

    /// (value, every action achieving it)
    pub fn solve(&mut self, s: &GameState) -> (i8, Vec<Action>) {
        let scored: Vec<(Action, i8)> =
            s.legal_actions().unwrap().into_iter().map(|a| (a, -self.value(&s.apply(a).unwrap()))).collect();
        let best = scored.iter().map(|&(_, v)| v).max().unwrap();
        (best, scored.into_iter().filter(|&(_, v)| v == best).map(|(a, _)| a).collect())
    }
}

/// A non-terminal Connect Four position reached by uniform random moves,
/// with at most `max_remaining` empty cells. Retries until one is found.
pub fn random_c4_position(w: u8, h: u8, max_remaining: u32, rng: &mut ChaCha8Rng) -> GameState {
    loop {
        let mut s = GameState::connect_four(w, h).unwrap();
        while !s.is_terminal() && s.remaining_plies().unwrap() > max_remaining {
            let legal = s.legal_actions().unwrap();
            s.play(legal[rng.random_range(0..legal.len())]).unwrap();
        }
        if !s.is_terminal() {
            return s;
        }
    }
}

/// Every non-terminal position reachable on a `w x h` board, deduplicated.
pub fn all_c4_positions(w: u8, h: u8) -> Vec<GameState> {
    let mut seen: HashMap<ObservationKey, GameState> = HashMap::new();
    let mut frontier = vec![GameState::connect_four(w, h).unwrap()];
    while let Some(s) = frontier.pop() {
        if s.is_terminal() || seen.contains_key(&s.observation_key()) {
            continue;
        }
        for a in s.legal_actions().unwrap() {
            frontier.push(s.apply(a).unwrap());
        }
        seen.insert(s.observation_key(), s);
    }
    let mut out: Vec<GameState> = seen.into_values().collect();
    out.sort_by_key(|s| s.observation_key());
    out
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Exact probability of every toy-game state (move sequences of length
/// 1..=K) under uniform play, by enumerating all b^K games. Each game visits
/// K states, so each visit has weight 1 / (K * b^K).
pub fn toy_enumerated_probabilities(b: u32, k: u32) -> HashMap<Vec<u8>, f64> {
    let games = (b as u64).pow(k);
    let mut counts: HashMap<Vec<u8>, u64> = HashMap::new();
    for g in 0..games {
        let mut digits = Vec::with_capacity(k as usize);
        let mut x = g;
        for _ in 0..k {
            digits.push((x % b as u64) as u8);
            x /= b as u64;
        }
        for len in 1..=k as usize {
            *counts.entry(digits[..len].to_vec()).or_default() += 1;
        }
    }
    let total = (games * k as u64) as f64;
    counts.into_iter().map(|(s, c)| (s, c as f64 / total)).collect()
}

/// Riemann zeta by Euler-Maclaurin: sum to N-1, then the integral, half
/// term and the B2, B4, B6 corrections at N = 50.
pub fn zeta_euler_maclaurin(s: f64) -> f64 {
    let n = 50.0f64;
    let mut sum = 0.0;
    for k in 1..50 {
        sum += (k as f64).powf(-s);
    }
    sum += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    sum += s / 12.0 * n.powf(-s - 1.0);
    sum -= s * (s + 1.0) * (s + 2.0) / 720.0 * n.powf(-s - 3.0);
    sum += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0 * n.powf(-s - 5.0);
    sum
}
