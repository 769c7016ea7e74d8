//! Connect Four on a `width x height` bitboard.
//!
//! Column `c` occupies bits `c*(height+1) .. c*(height+1)+height`; the extra
//! bit per column is a sentinel that keeps line shifts from wrapping.
//!
//! Key body: `width*height` cell bytes row-major starting from the bottom
//! row (0 empty, 1 player 0, 2 player 1), the side to move, then `width` and
//! `height` as counter bytes.

use super::{Action, EngineError, ObservationKey, Outcome, Player};

/// Bits available for the bitboard (`width * (height + 1)` must fit).
pub const MAX_CONNECT_FOUR_CELLS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConnectFour {
    width: u8,
    height: u8,
    stones: [u64; 2],
    mask: u64,
    to_move: Player,
}

impl ConnectFour {
    pub(crate) fn new(width: u8, height: u8) -> Result<Self, EngineError> {
        if width == 0 || height == 0 || u32::from(width) * (u32::from(height) + 1) > MAX_CONNECT_FOUR_CELLS {
            return Err(EngineError::BadDimensions { width, height });
        }
        Ok(ConnectFour { width, height, stones: [0, 0], mask: 0, to_move: Player::FIRST })
    }

    pub fn width(&self) -> u8 {
        self.width
    }

    pub fn height(&self) -> u8 {
        self.height
    }

    pub fn cells(&self) -> u32 {
        u32::from(self.width) * u32::from(self.height)
    }

    pub fn disk_count(&self) -> u32 {
        self.mask.count_ones()
    }

    pub(crate) fn to_move(&self) -> Player {
        self.to_move
    }

    /// (stones of the side to move, all stones).
    pub(crate) fn mover_and_mask(&self) -> (u64, u64) {
        (self.stones[self.to_move.index()], self.mask)
    }

    fn stride(&self) -> u32 {
        u32::from(self.height) + 1
    }

    fn top_bit(&self, col: u32) -> u64 {
        1u64 << (u32::from(self.height) - 1 + col * self.stride())
    }

    fn bottom_bit(&self, col: u32) -> u64 {
        1u64 << (col * self.stride())
    }

    fn column_mask(&self, col: u32) -> u64 {
        ((1u64 << self.height) - 1) << (col * self.stride())
    }

    pub(crate) fn can_play(&self, col: u32) -> bool {
        col < u32::from(self.width) && self.mask & self.top_bit(col) == 0
    }

    pub(crate) fn legal_actions(&self, out: &mut Vec<Action>) {
        out.extend((0..u32::from(self.width)).filter(|&c| self.can_play(c)).map(|c| Action(c as u16)));
    }

    pub(crate) fn apply(&mut self, action: Action) -> Result<Outcome, EngineError> {
        let col = u32::from(action.0);
        if !self.can_play(col) {
            return Err(EngineError::IllegalAction(action.0));
        }
        let bit = (self.mask + self.bottom_bit(col)) & self.column_mask(col);
        let p = self.to_move;
        self.stones[p.index()] |= bit;
        self.mask |= bit;
        self.to_move = p.other();
        Ok(if has_four(self.stones[p.index()], self.height) {
            Outcome::Win(p)
        } else if self.disk_count() == self.cells() {
            Outcome::Draw
        } else {
            Outcome::Ongoing
        })
    }

    pub(crate) fn outcome_from_scratch(&self) -> Outcome {
        for p in [Player::FIRST, Player::SECOND] {
            if has_four(self.stones[p.index()], self.height) {
                return Outcome::Win(p);
            }
        }
        if self.disk_count() == self.cells() {
            Outcome::Draw
        } else {
            Outcome::Ongoing
        }
    }

    fn cell(&self, row: u32, col: u32) -> u8 {
        let bit = 1u64 << (row + col * self.stride());
        if self.stones[0] & bit != 0 {
            1
        } else if self.stones[1] & bit != 0 {
            2
        } else {
            0
        }
    }

    pub(crate) fn encode(&self, key: &mut ObservationKey) {
        for row in 0..u32::from(self.height) {
            for col in 0..u32::from(self.width) {
                key.push(self.cell(row, col));
            }
        }
        key.push(self.to_move.index() as u8);
        key.push(self.width);
        key.push(self.height);
    }

    pub(crate) fn decode(body: &[u8]) -> Result<Self, EngineError> {
        let bad = |m: &str| EngineError::MalformedKey(format!("connect four: {m}"));
        if body.len() < 3 {
            return Err(bad("too short"));
        }
        let (width, height) = (body[body.len() - 2], body[body.len() - 1]);
        let mut b = ConnectFour::new(width, height)?;
        let cells = b.cells() as usize;
        if body.len() != cells + 3 {
            return Err(bad("length does not match dimensions"));
        }
        for col in 0..u32::from(width) {
            let mut gap = false;
            for row in 0..u32::from(height) {
                let v = body[(row * u32::from(width) + col) as usize];
                let bit = 1u64 << (row + col * b.stride());
                match v {
                    0 => gap = true,
                    1 | 2 if gap => return Err(bad("floating disk")),
                    1 | 2 => {
                        b.stones[usize::from(v - 1)] |= bit;
                        b.mask |= bit;
                    }
                    _ => return Err(bad("invalid cell byte")),
                }
            }
        }
        let (n0, n1) = (b.stones[0].count_ones(), b.stones[1].count_ones());
        let expected = if n0 == n1 {
            Player::FIRST
        } else if n0 == n1 + 1 {
            Player::SECOND
        } else {
            return Err(bad("disk counts inconsistent"));
        };
        if body[cells] != expected.index() as u8 {
            return Err(bad("side to move inconsistent with disk counts"));
        }
        b.to_move = expected;
        Ok(b)
    }
}

/// Four aligned stones in `stones` for a board of the given height.
pub(crate) fn has_four(stones: u64, height: u8) -> bool {
    let h = u32::from(height);
    [1, h + 1, h, h + 2].into_iter().any(|d| {
        let m = stones & (stones >> d);
        m & (m >> (2 * d)) != 0
    })
}
