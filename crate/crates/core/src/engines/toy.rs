//! Constant-branching toy game: every position has `b` moves, every game
//! lasts exactly `K` moves and ends in a draw. A state is its move sequence.
//!
//! Key body: the move sequence (one byte per move), then the side to move.

use super::{Action, EngineError, ObservationKey, Outcome, Player};

pub const MAX_TOY_BRANCHING: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Toy {
    seq: Vec<u8>,
    branching: u16,
    length: u32,
}

impl Toy {
    pub(crate) fn new(branching: u16, length: u32) -> Self {
        Toy { seq: Vec::new(), branching, length }
    }

    pub(crate) fn to_move(&self) -> Player {
        if self.seq.len() % 2 == 0 {
            Player::FIRST
        } else {
            Player::SECOND
        }
    }

    pub(crate) fn len(&self) -> u32 {
        self.seq.len() as u32
    }

    pub(crate) fn length(&self) -> u32 {
        self.length
    }

    pub(crate) fn sequence(&self) -> &[u8] {
        &self.seq
    }

    pub(crate) fn legal_actions(&self, out: &mut Vec<Action>) {
        out.extend((0..self.branching).map(Action));
    }

    pub(crate) fn apply(&mut self, action: Action) -> Result<Outcome, EngineError> {
        if action.0 >= self.branching || self.len() >= self.length {
            return Err(EngineError::IllegalAction(action.0));
        }
        self.seq.push(action.0 as u8);
        Ok(self.outcome())
    }

    pub(crate) fn outcome(&self) -> Outcome {
        if self.len() >= self.length {
            Outcome::Draw
        } else {
            Outcome::Ongoing
        }
    }

    pub(crate) fn encode(&self, key: &mut ObservationKey) {
        key.extend(&self.seq);
        key.push(self.to_move().index() as u8);
    }

    pub(crate) fn decode(body: &[u8], branching: u16, length: u32) -> Result<Self, EngineError> {
        let bad = |m: &str| EngineError::MalformedKey(format!("toy: {m}"));
        let (&mover, seq) = body.split_last().ok_or_else(|| bad("empty body"))?;
        if seq.len() as u64 > u64::from(length) {
            return Err(bad("sequence longer than the game"));
        }
        if seq.iter().any(|&m| u16::from(m) >= branching) {
            return Err(bad("move outside the branching factor"));
        }
        let t = Toy { seq: seq.to_vec(), branching, length };
        if usize::from(mover) != t.to_move().index() {
            return Err(bad("side to move inconsistent with sequence length"));
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{new_game, GameId, GameState, ToyParams};
    use super::*;

    #[test]
    fn fixed_length_and_branching() {
        let p = ToyParams::new(3, 4).unwrap();
        let mut s = new_game(GameId::ToyIdeal, Some(&p)).unwrap();
        for i in 0..4 {
            assert_eq!(s.legal_actions().unwrap().len(), 3);
            assert!(s.apply(Action(3)).is_err());
            s.play(Action(i % 3)).unwrap();
        }
        assert_eq!(s.outcome(), Outcome::Draw);
        assert_eq!(s.move_sequence().unwrap(), &[0, 1, 2, 0]);
        assert_eq!(s.remaining_plies(), Some(0));
    }

    #[test]
    fn distinct_sequences_distinct_keys() {
        let p = ToyParams::new(2, 3).unwrap();
        let s = new_game(GameId::ToyIdeal, Some(&p)).unwrap();
        let a = s.apply(Action(0)).unwrap().apply(Action(1)).unwrap();
        let b = s.apply(Action(1)).unwrap().apply(Action(0)).unwrap();
        assert_ne!(a.observation_key(), b.observation_key());
        let back = GameState::from_observation_key(&a.observation_key(), Some(&p)).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn decode_rejects_bad_bodies() {
        assert!(Toy::decode(&[], 2, 3).is_err());
        assert!(Toy::decode(&[2, 1], 2, 3).is_err());
        assert!(Toy::decode(&[0, 0], 2, 3).is_err());
        assert!(Toy::decode(&[0, 0, 0, 0, 0], 2, 3).is_err());
        assert!(Toy::decode(&[0, 1], 2, 3).is_ok());
    }
}
