#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub(super) enum Bound {
    Exact,
    /// True value is at least the stored value.
    Lower,
    /// True value is at most the stored value.
    Upper,
}

#[derive(Copy, Clone, Debug)]
pub(super) struct Entry {
    key: u64,
    generation: u32,
    pub(super) value: i8,
    pub(super) bound: Bound,
    /// Empty cells left when the entry was stored.
    #[allow(dead_code)]
    pub(super) depth: u8,
    pub(super) best: Option<u8>,
}

const EMPTY: Entry = Entry { key: 0, generation: 0, value: 0, bound: Bound::Exact, depth: 0, best: None };

/// Fixed-size, always-replace table. Clearing bumps a generation counter
/// instead of touching the memory.
pub(super) struct TranspositionTable {
    entries: Vec<Entry>,
    shift: u32,
    generation: u32,
}

impl TranspositionTable {
    pub(super) fn new(bits: u32) -> Self {
        let bits = bits.clamp(4, 30);
        TranspositionTable { entries: vec![EMPTY; 1 << bits], shift: 64 - bits, generation: 1 }
    }

    fn slot(&self, key: u64) -> usize {
        (key.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> self.shift) as usize
    }

    pub(super) fn get(&self, key: u64) -> Option<Entry> {
        let e = self.entries[self.slot(key)];
        (e.generation == self.generation && e.key == key).then_some(e)
    }

    pub(super) fn put(&mut self, key: u64, value: i8, bound: Bound, depth: u8, best: Option<u8>) {
        let i = self.slot(key);
        self.entries[i] = Entry { key, generation: self.generation, value, bound, depth, best };
    }

    pub(super) fn clear(&mut self) {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.entries.fill(EMPTY);
            self.generation = 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_lookup_clear() {
        let mut t = TranspositionTable::new(8);
        assert!(t.get(42).is_none());
        t.put(42, 1, Bound::Lower, 10, Some(3));
        let e = t.get(42).unwrap();
        assert_eq!((e.value, e.bound, e.best), (1, Bound::Lower, Some(3)));
        t.clear();
        assert!(t.get(42).is_none());
    }
}
