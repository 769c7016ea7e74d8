use std::sync::atomic::{AtomicU8, Ordering};

/// Count-min sketch with saturating 8-bit counters, safe to update from
/// many threads. Estimates never undercount.
pub(crate) struct CountSketch {
    cells: Vec<AtomicU8>,
    rows: u32,
    shift: u32,
    row_len: usize,
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &b| (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3))
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl CountSketch {
    pub(crate) fn new(log2_width: u32, rows: u32) -> Self {
        let row_len = 1usize << log2_width;
        let cells = (0..row_len * rows as usize).map(|_| AtomicU8::new(0)).collect();
        CountSketch { cells, rows, shift: 64 - log2_width, row_len }
    }

    fn slots(&self, bytes: &[u8]) -> impl Iterator<Item = usize> + '_ {
        let h = fnv1a(bytes);
        let (h1, h2) = (splitmix(h), splitmix(h ^ 0x5851_F42D_4C95_7F2D) | 1);
        (0..self.rows as usize).map(move |r| r * self.row_len + (h1.wrapping_add((r as u64).wrapping_mul(h2)) >> self.shift) as usize)
    }

    pub(crate) fn add(&self, bytes: &[u8]) {
        for i in self.slots(bytes) {
            let _ = self.cells[i].fetch_update(Ordering::Relaxed, Ordering::Relaxed, |c| c.checked_add(1));
        }
    }

    pub(crate) fn estimate(&self, bytes: &[u8]) -> u32 {
        self.slots(bytes).map(|i| u32::from(self.cells[i].load(Ordering::Relaxed))).min().unwrap_or(0)
    }
}
