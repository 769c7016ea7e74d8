use smallvec::SmallVec;

use crate::engines::ConnectFour;

/// Solver-side position: stones of the side to move plus the occupancy mask,
/// in the engine's column-major layout with one sentinel bit per column.
#[derive(Clone, Copy, Debug)]
pub(super) struct Position {
    current: u64,
    mask: u64,
    width: u32,
    height: u32,
    moves: u32,
    bottom: u64,
    board: u64,
}

impl Position {
    pub(super) fn from_board(b: &ConnectFour) -> Self {
        let (current, mask) = b.mover_and_mask();
        let (width, height) = (u32::from(b.width()), u32::from(b.height()));
        let bottom = (0..width).fold(0u64, |m, c| m | 1u64 << (c * (height + 1)));
        let board = bottom * ((1u64 << height) - 1);
        Position { current, mask, width, height, moves: mask.count_ones(), bottom, board }
    }

    pub(super) fn width(&self) -> u32 {
        self.width
    }

    pub(super) fn remaining(&self) -> u32 {
        self.width * self.height - self.moves
    }

    pub(super) fn is_full(&self) -> bool {
        self.remaining() == 0
    }

    /// Unique for a fixed board size.
    pub(super) fn key(&self) -> u64 {
        self.current + self.mask
    }

    fn column(&self, col: u32) -> u64 {
        ((1u64 << self.height) - 1) << (col * (self.height + 1))
    }

    fn possible(&self) -> u64 {
        self.mask.wrapping_add(self.bottom) & self.board
    }

    pub(super) fn can_play(&self, col: u32) -> bool {
        self.possible() & self.column(col) != 0
    }

    fn winning_cells(&self, stones: u64) -> u64 {
        winning_cells(stones, self.height) & (self.board ^ self.mask)
    }

    pub(super) fn is_winning_move(&self, col: u32) -> bool {
        self.winning_cells(self.current) & self.possible() & self.column(col) != 0
    }

    pub(super) fn can_win_next(&self) -> bool {
        self.winning_cells(self.current) & self.possible() != 0
    }

    /// Playable cells after which the opponent cannot win at once.
    pub(super) fn non_losing_moves(&self) -> u64 {
        let mut possible = self.possible();
        let threats = self.winning_cells(self.current ^ self.mask);
        let forced = possible & threats;
        if forced != 0 {
            if forced & (forced - 1) != 0 {
                return 0;
            }
            possible = forced;
        }
        possible & !(threats >> 1)
    }

    pub(super) fn play_col(&self, col: u32) -> Position {
        let bit = self.possible() & self.column(col);
        self.play_bit(bit)
    }

    fn play_bit(&self, bit: u64) -> Position {
        let mut next = *self;
        // switch perspective: the opponent becomes the side to move
        next.current = self.current ^ self.mask;
        next.mask = self.mask | bit;
        next.moves = self.moves + 1;
        next
    }

    /// Columns of `moves`, best first: the table's move, then by number of
    /// threats created, then nearest the centre.
    pub(super) fn ordered_moves(&self, moves: u64, first: Option<u8>) -> SmallVec<[u32; 16]> {
        let mut scored: SmallVec<[(u32, u32, u32); 16]> = SmallVec::new();
        for (rank, col) in centre_order(self.width).enumerate() {
            let bit = moves & self.column(col);
            if bit == 0 {
                continue;
            }
            let threats = if first == Some(col as u8) {
                u32::MAX
            } else {
                self.winning_cells(self.current | bit).count_ones()
            };
            scored.push((threats, rank as u32, col));
        }
        scored.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        scored.into_iter().map(|(_, _, c)| c).collect()
    }
}

fn centre_order(width: u32) -> impl Iterator<Item = u32> {
    (0..width).map(move |i| {
        let half = (i as i64 + 1) / 2;
        (width as i64 / 2 + if i % 2 == 0 { half } else { -half }) as u32
    })
}

/// Empty-or-not cells that would complete four for `stones`.
fn winning_cells(stones: u64, height: u32) -> u64 {
    let shl = |n: u32| stones.checked_shl(n).unwrap_or(0);
    let shr = |n: u32| stones.checked_shr(n).unwrap_or(0);
    // vertical
    let mut r = shl(1) & shl(2) & shl(3);
    for s in [height + 1, height, height + 2] {
        let p = shl(s) & shl(2 * s);
        r |= p & shl(3 * s);
        r |= p & shr(s);
        let p = shr(s) & shr(2 * s);
        r |= p & shl(s);
        r |= p & shr(3 * s);
    }
    r
}
