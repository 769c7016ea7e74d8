use std::collections::BTreeMap;

use super::{FrequencyTable, HarnessError};
use crate::engines::capture_counts_from_key;

/// Total visit frequency per absolute capture difference, over entries with
/// `count >= min_count`. `min_count = 2` drops the seen-once tail.
pub fn capture_difference_histogram(table: &FrequencyTable, min_count: u64) -> Result<BTreeMap<u32, u64>, HarnessError> {
    if !table.game().tracks_captures() {
        return Err(HarnessError::CapturesUnsupported(table.game()));
    }
    if min_count == 0 {
        return Err(HarnessError::Config("min_count must be >= 1".into()));
    }
    let mut hist = BTreeMap::new();
    for (key, e) in table.iter().filter(|(_, e)| e.count >= min_count) {
        let (a, b) = capture_counts_from_key(key)?;
        *hist.entry(a.abs_diff(b)).or_insert(0) += e.count;
    }
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::{GameId, GameState, Player};

    #[test]
    fn weights_by_count_and_filters_tail() {
        let mut t = FrequencyTable::new(GameId::Oware);
        let start = GameState::new(GameId::Oware, None).unwrap();
        let mut houses = [4u8; 12];
        houses[0] = 0;
        houses[1] = 1;
        houses[2] = 8;
        let captured = GameState::oware_from_parts(houses, [0, 3], Player::new(0).unwrap(), 10).unwrap();
        t.record(start.observation_key(), 1);
        t.record(start.observation_key(), 1);
        t.record(captured.observation_key(), 10);
        let all = capture_difference_histogram(&t, 1).unwrap();
        assert_eq!(all, BTreeMap::from([(0, 2), (3, 1)]));
        assert_eq!(capture_difference_histogram(&t, 2).unwrap(), BTreeMap::from([(0, 2)]));
        let c4 = FrequencyTable::new(GameId::ConnectFour);
        assert!(matches!(capture_difference_histogram(&c4, 1), Err(HarnessError::CapturesUnsupported(_))));
    }
}
