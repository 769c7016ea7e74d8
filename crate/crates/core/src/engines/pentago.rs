//! Pentago: 6x6 board of four rotating 3x3 quadrants.
//!
//! Cells are numbered row-major from the top-left, `cell = row * 6 + col`.
//! Quadrants: 0 top-left, 1 top-right, 2 bottom-left, 3 bottom-right.
//! Direction 0 rotates clockwise, 1 counter-clockwise. Every (cell, quadrant,
//! direction) triple is a distinct action even when the rotation is a no-op.
//!
//! A five made by the placement ends the game before the rotation is applied.
//! If the rotation completes fives for both players the game is drawn.
//!
//! Key body: 36 cell bytes row-major (0 empty, 1 player 0, 2 player 1), then
//! the side to move.

use std::sync::OnceLock;

use super::{Action, EngineError, ObservationKey, Outcome, Player};

pub const PENTAGO_ACTIONS: usize = 36 * 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pentago {
    stones: [u64; 2],
    to_move: Player,
}

struct Tables {
    lines: Vec<u64>,
    /// rotation[direction][i]: where quadrant-local cell `i` lands
    rotation: [[usize; 9]; 2],
    quadrant_cells: [[usize; 9]; 4],
    quadrant_masks: [u64; 4],
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let bit = |r: i32, c: i32| 1u64 << (r * 6 + c);
        let mut lines = Vec::new();
        for (dr, dc) in [(0, 1), (1, 0), (1, 1), (1, -1)] {
            for r in 0..6 {
                for c in 0..6 {
                    let (er, ec) = (r + 4 * dr, c + 4 * dc);
                    if (0..6).contains(&er) && (0..6).contains(&ec) {
                        lines.push((0..5).fold(0, |m, i| m | bit(r + i * dr, c + i * dc)));
                    }
                }
            }
        }
        let mut quadrant_cells = [[0usize; 9]; 4];
        let mut quadrant_masks = [0u64; 4];
        let mut rotation = [[0usize; 9]; 2];
        for i in 0..9 {
            let (r, c) = (i / 3, i % 3);
            // clockwise (r, c) -> (c, 2 - r); counter-clockwise (r, c) -> (2 - c, r)
            rotation[0][i] = c * 3 + (2 - r);
            rotation[1][i] = (2 - c) * 3 + r;
        }
        for q in 0..4 {
            let (r0, c0) = ((q / 2) * 3, (q % 2) * 3);
            for i in 0..9 {
                quadrant_cells[q][i] = (r0 + i / 3) * 6 + c0 + i % 3;
                quadrant_masks[q] |= 1u64 << quadrant_cells[q][i];
            }
        }
        Tables { lines, rotation, quadrant_cells, quadrant_masks }
    })
}

fn has_five(stones: u64) -> bool {
    tables().lines.iter().any(|&l| stones & l == l)
}

const FULL: u64 = (1u64 << 36) - 1;

impl Pentago {
    pub(crate) fn new() -> Self {
        Pentago { stones: [0, 0], to_move: Player::FIRST }
    }

    pub(crate) fn to_move(&self) -> Player {
        self.to_move
    }

    pub(crate) fn stone_count(&self) -> u32 {
        (self.stones[0] | self.stones[1]).count_ones()
    }

    pub(crate) fn legal_actions(&self, out: &mut Vec<Action>) {
        let occupied = self.stones[0] | self.stones[1];
        for cell in 0..36u16 {
            if occupied & (1u64 << cell) == 0 {
                out.extend((0..8).map(|r| Action(cell * 8 + r)));
            }
        }
    }

    fn rotate(&mut self, quadrant: usize, direction: usize) {
        let t = tables();
        let cells = &t.quadrant_cells[quadrant];
        for stones in &mut self.stones {
            let mut out = *stones & !t.quadrant_masks[quadrant];
            for (i, &from) in cells.iter().enumerate() {
                if *stones & (1u64 << from) != 0 {
                    out |= 1u64 << cells[t.rotation[direction][i]];
                }
            }
            *stones = out;
        }
    }

    pub(crate) fn apply(&mut self, action: Action) -> Result<Outcome, EngineError> {
        if usize::from(action.0) >= PENTAGO_ACTIONS {
            return Err(EngineError::IllegalAction(action.0));
        }
        let cell = action.0 / 8;
        let quadrant = usize::from((action.0 % 8) / 2);
        let direction = usize::from(action.0 % 2);
        let bit = 1u64 << cell;
        if (self.stones[0] | self.stones[1]) & bit != 0 {
            return Err(EngineError::IllegalAction(action.0));
        }
        let me = self.to_move;
        self.stones[me.index()] |= bit;
        self.to_move = me.other();
        if has_five(self.stones[me.index()]) {
            return Ok(Outcome::Win(me));
        }
        self.rotate(quadrant, direction);
        Ok(self.outcome_from_scratch())
    }

    pub(crate) fn outcome_from_scratch(&self) -> Outcome {
        match (has_five(self.stones[0]), has_five(self.stones[1])) {
            (true, true) => Outcome::Draw,
            (true, false) => Outcome::Win(Player::FIRST),
            (false, true) => Outcome::Win(Player::SECOND),
            (false, false) if (self.stones[0] | self.stones[1]) == FULL => Outcome::Draw,
            _ => Outcome::Ongoing,
        }
    }

    pub(crate) fn encode(&self, key: &mut ObservationKey) {
        for cell in 0..36 {
            let bit = 1u64 << cell;
            key.push(if self.stones[0] & bit != 0 {
                1
            } else if self.stones[1] & bit != 0 {
                2
            } else {
                0
            });
        }
        key.push(self.to_move.index() as u8);
    }

    pub(crate) fn decode(body: &[u8]) -> Result<Self, EngineError> {
        let bad = |m: &str| EngineError::MalformedKey(format!("pentago: {m}"));
        if body.len() != 37 {
            return Err(bad("expected 37 bytes"));
        }
        let mut p = Pentago::new();
        for (cell, &v) in body[..36].iter().enumerate() {
            match v {
                0 => {}
                1 | 2 => p.stones[usize::from(v - 1)] |= 1u64 << cell,
                _ => return Err(bad("invalid cell byte")),
            }
        }
        let (n0, n1) = (p.stones[0].count_ones(), p.stones[1].count_ones());
        p.to_move = match (n0 == n1, n0 == n1 + 1) {
            (true, _) => Player::FIRST,
            (_, true) => Player::SECOND,
            _ => return Err(bad("stone counts inconsistent")),
        };
        if body[36] != p.to_move.index() as u8 {
            return Err(bad("side to move inconsistent with stone counts"));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{new_game, GameId, GameState};
    use super::*;

    fn act(cell: u16, quadrant: u16, dir: u16) -> Action {
        Action(cell * 8 + quadrant * 2 + dir)
    }

    #[test]
    fn thirty_two_five_lines() {
        assert_eq!(tables().lines.len(), 32);
    }

    #[test]
    fn initial_has_288_actions() {
        // enumerate placements x rotations independently
        let mut n = 0;
        for _cell in 0..36 {
            for _q in 0..4 {
                for _d in 0..2 {
                    n += 1;
                }
            }
        }
        let s = new_game(GameId::Pentago, None).unwrap();
        assert_eq!(s.legal_actions().unwrap().len(), n);
        assert_eq!(n, 288);
    }

    #[test]
    fn clockwise_rotation_moves_corner() {
        let s = new_game(GameId::Pentago, None).unwrap();
        // place at top-left corner (cell 0) then rotate quadrant 0 clockwise -> cell 2
        let t = s.apply(act(0, 0, 0)).unwrap();
        let k = t.observation_key();
        assert_eq!(k.as_bytes()[1 + 2], 1);
        assert_eq!(k.as_bytes()[1], 0);
        // counter-clockwise: cell 0 -> cell 12 (row 2, col 0)
        let t = s.apply(act(0, 0, 1)).unwrap();
        assert_eq!(t.observation_key().as_bytes()[1 + 12], 1);
        // rotating another quadrant leaves the stone in place
        let t = s.apply(act(0, 3, 0)).unwrap();
        assert_eq!(t.observation_key().as_bytes()[1], 1);
    }

    #[test]
    fn four_rotations_are_identity() {
        let mut p = Pentago::new();
        p.stones[0] = 0b1011_0010_0110_1101;
        p.stones[1] = 1u64 << 20 | 1u64 << 35;
        let orig = p.clone();
        for q in 0..4 {
            for d in 0..2 {
                let mut r = orig.clone();
                for _ in 0..4 {
                    r.rotate(q, d);
                }
                assert_eq!(r, orig);
                let mut r = orig.clone();
                r.rotate(q, d);
                r.rotate(q, 1 - d);
                assert_eq!(r, orig);
            }
        }
    }

    fn play_all(moves: &[Action]) -> GameState {
        let mut s = new_game(GameId::Pentago, None).unwrap();
        for &m in moves {
            s.play(m).unwrap();
        }
        s
    }

    #[test]
    fn five_before_rotation_wins_immediately() {
        // player 0 fills row 5 cells 30..34; rotations are on quadrant 0 (top-left, empty-ish)
        // player 1 plays on row 0 cells 3,4,5 and 9 (top-right quadrant rotation not used).
        let mut moves = Vec::new();
        let p1_cells = [9, 10, 11, 15];
        for i in 0..4 {
            moves.push(act(30 + i, 0, 0));
            moves.push(act(p1_cells[i as usize], 0, 0));
        }
        // the winning placement rotates the bottom-left quadrant, which would break the line
        moves.push(act(34, 2, 0));
        let s = play_all(&moves);
        assert_eq!(s.outcome(), Outcome::Win(Player::FIRST));
        // row 5 still intact: rotation was skipped
        let k = s.observation_key();
        assert!((30..35).all(|c| k.as_bytes()[1 + c] == 1));
    }

    fn position(p0: &[u32], p1: &[u32]) -> Pentago {
        let mut p = Pentago::new();
        p.stones[0] = p0.iter().fold(0, |m, &c| m | 1u64 << c);
        p.stones[1] = p1.iter().fold(0, |m, &c| m | 1u64 << c);
        p
    }

    // Quadrant 1 clockwise sends local (2,0)->(0,0), (1,0)->(0,1), (2,1)->(1,0), (1,1)->(1,1),
    // i.e. cells 15->3, 9->4, 16->9, 10->10.

    #[test]
    fn simultaneous_fives_draw() {
        let mut p = position(&[0, 1, 2, 9, 35], &[6, 7, 8, 10, 16]);
        assert_eq!(p.apply(act(15, 1, 0)).unwrap(), Outcome::Draw);
    }

    #[test]
    fn rotation_completing_only_opponent_five_hands_them_the_win() {
        let mut p = position(&[0, 1, 9, 34, 35], &[6, 7, 8, 10, 16]);
        assert_eq!(p.apply(act(15, 1, 0)).unwrap(), Outcome::Win(Player::SECOND));
    }

    #[test]
    fn key_round_trip() {
        let s = play_all(&[act(7, 1, 0), act(20, 3, 1), act(0, 0, 1)]);
        let back = GameState::from_observation_key(&s.observation_key(), None).unwrap();
        assert_eq!(back, s);
    }
}
