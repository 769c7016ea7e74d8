//! Checkers (8x8 draughts) with forced captures.
//!
//! Only the 32 dark squares are stored. Square `s` sits on row `s / 4`; on
//! even rows it is column `2 * (s % 4) + 1`, on odd rows `2 * (s % 4)`.
//! Player 0 starts on rows 0..3 and moves towards row 7.
//!
//! Directions: 0 = (+1 row, -1 col), 1 = (+1, +1), 2 = (-1, -1), 3 = (-1, +1).
//! Men move in the two forward directions, kings in all four. Action
//! `from * 4 + dir` is a step or, when any capture exists, a jump. A jump
//! that can be continued leaves the same player to move with only that
//! piece allowed to jump again; a man reaching the far row is crowned and
//! its move ends.
//!
//! The game ends when the side to move has no pieces (loss) or no legal move
//! (draw), after 40 consecutive plies without a capture, or after 1000 plies.
//!
//! Key body: 32 square bytes (0 empty, 1 man and 2 king of player 0, 3 man
//! and 4 king of player 1), the side to move, then the square of a piece in
//! the middle of a multi-jump (0xFF if none).

use super::{Action, EngineError, ObservationKey, Outcome, Player};

pub const CHECKERS_ACTIONS: usize = 128;
pub const CHECKERS_DRAW_PLIES: u16 = 40;
pub const CHECKERS_PLY_CAP: u32 = 1000;

const NO_PENDING: u8 = 0xFF;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum CheckersPiece {
    Man(Player),
    King(Player),
}

impl CheckersPiece {
    fn code(self) -> u8 {
        match self {
            CheckersPiece::Man(p) => 1 + 2 * p.index() as u8,
            CheckersPiece::King(p) => 2 + 2 * p.index() as u8,
        }
    }

    fn owner(self) -> Player {
        match self {
            CheckersPiece::Man(p) | CheckersPiece::King(p) => p,
        }
    }
}

fn decode_piece(code: u8) -> Option<CheckersPiece> {
    match code {
        1 => Some(CheckersPiece::Man(Player::FIRST)),
        2 => Some(CheckersPiece::King(Player::FIRST)),
        3 => Some(CheckersPiece::Man(Player::SECOND)),
        4 => Some(CheckersPiece::King(Player::SECOND)),
        _ => None,
    }
}

const DIRS: [(i8, i8); 4] = [(1, -1), (1, 1), (-1, -1), (-1, 1)];

fn coords(sq: u8) -> (i8, i8) {
    let row = (sq / 4) as i8;
    let col = 2 * (sq % 4) as i8 + if row % 2 == 0 { 1 } else { 0 };
    (row, col)
}

#[cfg(test)]
fn square(row: i8, col: i8) -> Option<u8> {
    if !(0..8).contains(&row) || !(0..8).contains(&col) || (row + col) % 2 == 0 {
        return None;
    }
    Some((row * 4 + col / 2) as u8)
}

/// neighbour[sq][dir] and jump_target[sq][dir]
struct Geometry {
    step: [[Option<u8>; 4]; 32],
    jump: [[Option<u8>; 4]; 32],
}

const fn build_geometry() -> Geometry {
    let mut step = [[None; 4]; 32];
    let mut jump = [[None; 4]; 32];
    let mut sq = 0;
    while sq < 32 {
        let row = (sq / 4) as i8;
        let col = 2 * (sq % 4) as i8 + if row % 2 == 0 { 1 } else { 0 };
        let mut d = 0;
        while d < 4 {
            let (dr, dc) = DIRS[d];
            let (r1, c1) = (row + dr, col + dc);
            if r1 >= 0 && r1 < 8 && c1 >= 0 && c1 < 8 {
                step[sq][d] = Some((r1 * 4 + c1 / 2) as u8);
            }
            let (r2, c2) = (row + 2 * dr, col + 2 * dc);
            if r2 >= 0 && r2 < 8 && c2 >= 0 && c2 < 8 {
                jump[sq][d] = Some((r2 * 4 + c2 / 2) as u8);
            }
            d += 1;
        }
        sq += 1;
    }
    Geometry { step, jump }
}

static GEOMETRY: Geometry = build_geometry();

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Checkers {
    squares: [u8; 32],
    to_move: Player,
    pending: u8,
    plies_since_capture: u16,
}

impl Checkers {
    pub(crate) fn new() -> Self {
        let mut squares = [0u8; 32];
        for (sq, v) in squares.iter_mut().enumerate() {
            *v = match sq / 4 {
                0..=2 => CheckersPiece::Man(Player::FIRST).code(),
                5..=7 => CheckersPiece::Man(Player::SECOND).code(),
                _ => 0,
            };
        }
        Checkers { squares, to_move: Player::FIRST, pending: NO_PENDING, plies_since_capture: 0 }
    }

    pub(crate) fn from_parts(
        pieces: &[(u8, CheckersPiece)],
        to_move: Player,
        plies_since_capture: u16,
    ) -> Result<Self, EngineError> {
        let mut squares = [0u8; 32];
        for &(sq, piece) in pieces {
            if sq >= 32 || squares[usize::from(sq)] != 0 {
                return Err(EngineError::MalformedKey(format!("checkers: bad square {sq}")));
            }
            squares[usize::from(sq)] = piece.code();
        }
        let b = Checkers { squares, to_move, pending: NO_PENDING, plies_since_capture };
        let (a, c) = b.piece_counts();
        if a > 12 || c > 12 {
            return Err(EngineError::MalformedKey("checkers: more than 12 pieces".into()));
        }
        Ok(b)
    }

    pub(crate) fn to_move(&self) -> Player {
        self.to_move
    }

    pub(crate) fn piece_counts(&self) -> (u32, u32) {
        self.squares.iter().fold((0, 0), |(a, b), &v| match decode_piece(v).map(CheckersPiece::owner) {
            Some(p) if p == Player::FIRST => (a + 1, b),
            Some(_) => (a, b + 1),
            None => (a, b),
        })
    }

    pub(crate) fn captures(&self) -> (u32, u32) {
        let (a, b) = self.piece_counts();
        (12 - b, 12 - a)
    }

    pub(crate) fn same_position(&self, other: &Checkers) -> bool {
        self.squares == other.squares && self.to_move == other.to_move && self.pending == other.pending
    }

    fn piece(&self, sq: u8) -> Option<CheckersPiece> {
        decode_piece(self.squares[usize::from(sq)])
    }

    fn dirs_for(piece: CheckersPiece) -> &'static [usize] {
        match piece {
            CheckersPiece::King(_) => &[0, 1, 2, 3],
            CheckersPiece::Man(p) if p == Player::FIRST => &[0, 1],
            CheckersPiece::Man(_) => &[2, 3],
        }
    }

    fn can_jump(&self, sq: u8, dir: usize) -> bool {
        let Some(piece) = self.piece(sq) else { return false };
        let (Some(over), Some(to)) = (GEOMETRY.step[usize::from(sq)][dir], GEOMETRY.jump[usize::from(sq)][dir]) else {
            return false;
        };
        self.squares[usize::from(to)] == 0 && self.piece(over).is_some_and(|p| p.owner() != piece.owner())
    }

    fn can_step(&self, sq: u8, dir: usize) -> bool {
        GEOMETRY.step[usize::from(sq)][dir].is_some_and(|to| self.squares[usize::from(to)] == 0)
    }

    fn jumps_from(&self, sq: u8, out: &mut Vec<Action>) {
        if let Some(piece) = self.piece(sq) {
            for &d in Self::dirs_for(piece) {
                if self.can_jump(sq, d) {
                    out.push(Action(u16::from(sq) * 4 + d as u16));
                }
            }
        }
    }

    fn mover_squares(&self) -> impl Iterator<Item = u8> + '_ {
        let me = self.to_move;
        (0..32u8).filter(move |&sq| self.piece(sq).is_some_and(|p| p.owner() == me))
    }

    pub(crate) fn legal_actions(&self, out: &mut Vec<Action>) {
        if self.pending != NO_PENDING {
            self.jumps_from(self.pending, out);
            return;
        }
        for sq in self.mover_squares() {
            self.jumps_from(sq, out);
        }
        if !out.is_empty() {
            return;
        }
        for sq in self.mover_squares() {
            let piece = self.piece(sq).expect("mover square holds a piece");
            for &d in Self::dirs_for(piece) {
                if self.can_step(sq, d) {
                    out.push(Action(u16::from(sq) * 4 + d as u16));
                }
            }
        }
    }

    fn has_any_move(&self) -> bool {
        let mut buf = Vec::new();
        self.legal_actions(&mut buf);
        !buf.is_empty()
    }

    pub(crate) fn apply(&mut self, action: Action, turn: u32) -> Result<Outcome, EngineError> {
        let mut legal = Vec::with_capacity(16);
        self.legal_actions(&mut legal);
        if !legal.contains(&action) {
            return Err(EngineError::IllegalAction(action.0));
        }
        let from = (action.0 / 4) as u8;
        let dir = usize::from(action.0 % 4);
        let piece = self.piece(from).expect("legal action starts on a piece");
        let me = self.to_move;
        let is_jump = self.can_jump(from, dir);
        let to = if is_jump {
            let over = GEOMETRY.step[usize::from(from)][dir].expect("jump has a middle square");
            self.squares[usize::from(over)] = 0;
            GEOMETRY.jump[usize::from(from)][dir].expect("jump has a landing square")
        } else {
            GEOMETRY.step[usize::from(from)][dir].expect("step has a target")
        };
        self.squares[usize::from(from)] = 0;
        let far_row = if me == Player::FIRST { 7 } else { 0 };
        let crowned = matches!(piece, CheckersPiece::Man(_)) && coords(to).0 == far_row;
        let landed = if crowned { CheckersPiece::King(me) } else { piece };
        self.squares[usize::from(to)] = landed.code();

        self.plies_since_capture = if is_jump { 0 } else { self.plies_since_capture.saturating_add(1) };
        self.pending = NO_PENDING;
        let mut continues = false;
        if is_jump && !crowned {
            let mut more = Vec::new();
            self.jumps_from(to, &mut more);
            continues = !more.is_empty();
        }
        if continues {
            self.pending = to;
        } else {
            self.to_move = me.other();
        }
        Ok(self.outcome(turn))
    }

    pub(crate) fn outcome(&self, turn: u32) -> Outcome {
        let (a, b) = self.piece_counts();
        let mover_pieces = if self.to_move == Player::FIRST { a } else { b };
        if mover_pieces == 0 {
            return Outcome::Win(self.to_move.other());
        }
        if !self.has_any_move() {
            return Outcome::Draw;
        }
        if self.plies_since_capture >= CHECKERS_DRAW_PLIES || turn >= CHECKERS_PLY_CAP {
            return Outcome::Draw;
        }
        Outcome::Ongoing
    }

    pub(crate) fn encode(&self, key: &mut ObservationKey) {
        key.extend(&self.squares);
        key.push(self.to_move.index() as u8);
        key.push(self.pending);
    }
}

pub(crate) fn captures_from_key(body: &[u8]) -> Result<(u32, u32), EngineError> {
    if body.len() != 34 {
        return Err(EngineError::MalformedKey(format!("checkers key body of {} bytes", body.len())));
    }
    let mut counts = [0u32; 2];
    for &v in &body[..32] {
        match decode_piece(v) {
            Some(p) => counts[p.owner().index()] += 1,
            None if v == 0 => {}
            None => return Err(EngineError::MalformedKey("checkers: invalid square byte".into())),
        }
    }
    if counts[0] > 12 || counts[1] > 12 {
        return Err(EngineError::MalformedKey("checkers: more than 12 pieces".into()));
    }
    Ok((12 - counts[1], 12 - counts[0]))
}

#[cfg(test)]
mod tests {
    use super::super::{capture_counts_from_key, new_game, GameId, GameState};
    use super::*;

    use CheckersPiece::{King, Man};
    const P0: Player = Player::FIRST;
    const P1: Player = Player::SECOND;

    fn sq(row: i8, col: i8) -> u8 {
        square(row, col).expect("dark square")
    }

    fn act(from: u8, dir: u16) -> Action {
        Action(u16::from(from) * 4 + dir)
    }

    #[test]
    fn geometry_round_trips() {
        for s in 0..32u8 {
            let (r, c) = coords(s);
            assert_eq!(square(r, c), Some(s));
        }
        assert_eq!(square(0, 0), None);
    }

    #[test]
    fn opening_moves() {
        let s = new_game(GameId::Checkers, None).unwrap();
        // only row-2 men can move: 4 pieces, 7 moves
        assert_eq!(s.legal_actions().unwrap().len(), 7);
    }

    #[test]
    fn capture_is_forced_and_counted() {
        let s = GameState::checkers_from_parts(
            &[(sq(2, 1), Man(P0)), (sq(0, 7), Man(P0)), (sq(3, 2), Man(P1)), (sq(7, 0), Man(P1))],
            P0,
            0,
            0,
        )
        .unwrap();
        let legal = s.legal_actions().unwrap();
        assert_eq!(legal, vec![act(sq(2, 1), 1)]);
        let t = s.apply(legal[0]).unwrap();
        // counts are relative to a full 12-piece set
        assert_eq!(s.capture_counts().unwrap(), (10, 10));
        assert_eq!(t.capture_counts().unwrap(), (11, 10));
        assert_eq!(capture_counts_from_key(&t.observation_key()).unwrap(), (11, 10));
        assert_eq!(t.to_move(), P1);
        assert_eq!(t.checkers_piece_counts(), Some((2, 1)));
    }

    #[test]
    fn multi_jump_keeps_the_mover() {
        let s = GameState::checkers_from_parts(
            &[
                (sq(0, 1), Man(P0)),
                (sq(1, 2), Man(P1)),
                (sq(3, 4), Man(P1)),
                (sq(7, 6), Man(P1)),
            ],
            P0,
            0,
            0,
        )
        .unwrap();
        let t = s.apply(act(sq(0, 1), 1)).unwrap();
        assert_eq!(t.to_move(), P0);
        // only the jumping piece may continue
        assert_eq!(t.legal_actions().unwrap(), vec![act(sq(2, 3), 1)]);
        let u = t.apply(act(sq(2, 3), 1)).unwrap();
        assert_eq!(u.to_move(), P1);
        assert_eq!(s.capture_counts().unwrap(), (9, 11));
        assert_eq!(u.capture_counts().unwrap(), (11, 11));
        assert_ne!(s.observation_key(), t.observation_key());
    }

    #[test]
    fn crowning_ends_the_move() {
        let s = GameState::checkers_from_parts(
            &[(sq(5, 2), Man(P0)), (sq(6, 3), Man(P1)), (sq(6, 5), Man(P1)), (sq(0, 1), Man(P1))],
            P0,
            0,
            0,
        )
        .unwrap();
        let t = s.apply(act(sq(5, 2), 1)).unwrap();
        assert_eq!(t.to_move(), P1);
        let k = t.observation_key();
        assert_eq!(k.as_bytes()[1 + usize::from(sq(7, 4))], King(P0).code());
    }

    #[test]
    fn kings_move_backwards() {
        let s = GameState::checkers_from_parts(&[(sq(4, 3), King(P0)), (sq(7, 0), Man(P1))], P0, 0, 0).unwrap();
        assert_eq!(s.legal_actions().unwrap().len(), 4);
    }

    #[test]
    fn losing_all_pieces_loses() {
        let s = GameState::checkers_from_parts(&[(sq(2, 1), Man(P0)), (sq(3, 2), Man(P1))], P0, 0, 0).unwrap();
        let t = s.apply(act(sq(2, 1), 1)).unwrap();
        assert_eq!(t.outcome(), Outcome::Win(P0));
    }

    #[test]
    fn blocked_side_draws() {
        // a player 1 man on row 0 has no forward squares
        let s = GameState::checkers_from_parts(&[(sq(0, 1), Man(P1)), (sq(7, 0), King(P0))], P1, 5, 0).unwrap();
        assert_eq!(s.outcome(), Outcome::Draw);
    }

    #[test]
    fn forty_quiet_plies_draw() {
        let pieces = [(sq(4, 3), King(P0)), (sq(7, 0), King(P1))];
        let s = GameState::checkers_from_parts(&pieces, P0, 100, 39).unwrap();
        assert_eq!(s.outcome(), Outcome::Ongoing);
        let t = s.apply(act(sq(4, 3), 0)).unwrap();
        assert_eq!(t.outcome(), Outcome::Draw);
        let s = GameState::checkers_from_parts(&pieces, P0, 1000, 0).unwrap();
        assert_eq!(s.outcome(), Outcome::Draw);
    }

    #[test]
    fn quiet_counter_not_in_key() {
        let pieces = [(sq(4, 3), King(P0)), (sq(7, 0), King(P1))];
        let a = GameState::checkers_from_parts(&pieces, P0, 10, 3).unwrap();
        let b = GameState::checkers_from_parts(&pieces, P0, 30, 17).unwrap();
        assert_eq!(a.observation_key(), b.observation_key());
        assert!(a.same_position(&b));
    }

    #[test]
    fn rejects_illegal_step_when_capture_available() {
        let s = GameState::checkers_from_parts(
            &[(sq(2, 1), Man(P0)), (sq(2, 5), Man(P0)), (sq(3, 2), Man(P1))],
            P0,
            0,
            0,
        )
        .unwrap();
        assert!(s.apply(act(sq(2, 5), 0)).is_err());
    }
}
