use std::cmp::Ordering;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::engines::{GameId, ObservationKey};

/// Accumulated statistics for one observation key.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub count: u64,
    pub turn_sum: u64,
    pub turn_sq_sum: u64,
    /// Smallest turn at which the key was recorded.
    pub first_seen_turn: u32,
}

impl Entry {
    fn single(turn: u32) -> Self {
        let t = u64::from(turn);
        Entry { count: 1, turn_sum: t, turn_sq_sum: t * t, first_seen_turn: turn }
    }

    fn absorb(&mut self, other: &Entry) {
        self.count += other.count;
        self.turn_sum += other.turn_sum;
        self.turn_sq_sum += other.turn_sq_sum;
        self.first_seen_turn = self.first_seen_turn.min(other.first_seen_turn);
    }

    pub fn mean_turn(&self) -> f64 {
        self.turn_sum as f64 / self.count as f64
    }

    /// Population variance of the recorded turns.
    pub fn turn_variance(&self) -> f64 {
        let n = self.count as f64;
        let mean = self.turn_sum as f64 / n;
        (self.turn_sq_sum as f64 / n - mean * mean).max(0.0)
    }
}

/// Map from observation key to visit statistics for one game.
///
/// `states_recorded` is always the sum of the entry counts. When a
/// count prefilter was used, `min_complete_count > 1` and keys seen fewer
/// times than that may be missing; `states_visited` still counts every visit.
#[derive(Clone, Debug)]
pub struct FrequencyTable {
    pub(crate) game: GameId,
    pub(crate) entries: FxHashMap<ObservationKey, Entry>,
    pub(crate) games_played: u64,
    pub(crate) states_recorded: u64,
    pub(crate) states_visited: u64,
    pub(crate) min_complete_count: u32,
}

impl PartialEq for FrequencyTable {
    fn eq(&self, other: &Self) -> bool {
        self.game == other.game
            && self.games_played == other.games_played
            && self.states_recorded == other.states_recorded
            && self.states_visited == other.states_visited
            && self.min_complete_count == other.min_complete_count
            && self.entries == other.entries
    }
}

impl FrequencyTable {
    pub fn new(game: GameId) -> Self {
        FrequencyTable {
            game,
            entries: FxHashMap::default(),
            games_played: 0,
            states_recorded: 0,
            states_visited: 0,
            min_complete_count: 1,
        }
    }

    pub fn game(&self) -> GameId {
        self.game
    }

    pub fn games_played(&self) -> u64 {
        self.games_played
    }

    pub fn states_recorded(&self) -> u64 {
        self.states_recorded
    }

    pub fn states_visited(&self) -> u64 {
        self.states_visited
    }

    /// Keys with at least this many visits are guaranteed present with exact
    /// statistics; 1 means the table is complete.
    pub fn min_complete_count(&self) -> u32 {
        self.min_complete_count
    }

    pub fn is_complete(&self) -> bool {
        self.min_complete_count <= 1
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &ObservationKey) -> Option<&Entry> {
        self.entries.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ObservationKey, &Entry)> {
        self.entries.iter()
    }

    pub fn record(&mut self, key: ObservationKey, turn: u32) {
        self.states_recorded += 1;
        self.states_visited += 1;
        self.entries.entry(key).and_modify(|e| e.absorb(&Entry::single(turn))).or_insert_with(|| Entry::single(turn));
    }

    /// Counts a visit that was filtered out before reaching the table.
    pub(crate) fn record_skipped(&mut self) {
        self.states_visited += 1;
    }

    pub(crate) fn finish_game(&mut self) {
        self.games_played += 1;
    }

    /// Entrywise sum. Panics if the tables belong to different games.
    pub fn merge(mut self, mut other: FrequencyTable) -> FrequencyTable {
        assert_eq!(self.game, other.game, "merging tables of different games");
        if self.entries.len() < other.entries.len() {
            std::mem::swap(&mut self, &mut other);
        }
        for (k, e) in other.entries {
            self.entries.entry(k).and_modify(|x| x.absorb(&e)).or_insert(e);
        }
        self.games_played += other.games_played;
        self.states_recorded += other.states_recorded;
        self.states_visited += other.states_visited;
        self.min_complete_count = self.min_complete_count.max(other.min_complete_count);
        self
    }

    /// Entries in rank order: count descending, then key bytes ascending.
    pub fn ranked(&self) -> Vec<(&ObservationKey, &Entry)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_unstable_by(|a, b| rank_order(a, b));
        v
    }

    /// Entries sorted by key bytes (the serialization order).
    pub fn sorted_by_key(&self) -> Vec<(&ObservationKey, &Entry)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_unstable_by(|a, b| a.0.cmp(b.0));
        v
    }

    /// Builds a table directly from `(key, entry)` pairs, e.g. synthetic data.
    pub fn from_entries(game: GameId, games_played: u64, entries: impl IntoIterator<Item = (ObservationKey, Entry)>) -> Self {
        let mut t = FrequencyTable::new(game);
        t.games_played = games_played;
        for (k, e) in entries {
            t.states_recorded += e.count;
            t.states_visited += e.count;
            t.entries.entry(k).and_modify(|x| x.absorb(&e)).or_insert(e);
        }
        t
    }

    /// Keeps only entries with `count >= min_count`.
    pub fn retain_min_count(&mut self, min_count: u64) {
        self.entries.retain(|_, e| e.count >= min_count);
        self.states_recorded = self.entries.values().map(|e| e.count).sum();
    }
}

pub(crate) fn rank_order(a: &(&ObservationKey, &Entry), b: &(&ObservationKey, &Entry)) -> Ordering {
    b.1.count.cmp(&a.1.count).then_with(|| a.0.cmp(b.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(b: &[u8]) -> ObservationKey {
        let mut v = vec![GameId::ToyIdeal.as_byte()];
        v.extend_from_slice(b);
        ObservationKey::from_bytes(&v).unwrap()
    }

    fn table(rows: &[(&[u8], u32)]) -> FrequencyTable {
        let mut t = FrequencyTable::new(GameId::ToyIdeal);
        for &(k, turn) in rows {
            t.record(key(k), turn);
        }
        t
    }

    #[test]
    fn record_accumulates_moments() {
        let t = table(&[(&[1], 2), (&[1], 4), (&[2], 1)]);
        let e = t.get(&key(&[1])).unwrap();
        assert_eq!((e.count, e.turn_sum, e.turn_sq_sum, e.first_seen_turn), (2, 6, 20, 2));
        assert_eq!(e.mean_turn(), 3.0);
        assert_eq!(e.turn_variance(), 1.0);
        assert_eq!(t.states_recorded(), 3);
    }

    #[test]
    fn merge_is_commutative_and_associative() {
        let a = table(&[(&[1], 2), (&[2], 5)]);
        let b = table(&[(&[1], 1), (&[3], 3)]);
        let c = table(&[(&[2], 2), (&[3], 9), (&[4], 4)]);
        assert_eq!(a.clone().merge(b.clone()), b.clone().merge(a.clone()));
        assert_eq!(a.clone().merge(b.clone().merge(c.clone())), a.merge(b).merge(c));
    }

    #[test]
    fn rank_order_breaks_ties_by_key() {
        let t = table(&[(&[9], 1), (&[3], 1), (&[5], 1), (&[5], 1)]);
        let keys: Vec<_> = t.ranked().into_iter().map(|(k, _)| k.as_bytes()[1]).collect();
        assert_eq!(keys, vec![5, 3, 9]);
    }
}
