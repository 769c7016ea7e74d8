//! Oware (abapa rules as played here).
//!
//! Houses are numbered 0..12 in sowing (counter-clockwise) order: player 0
//! owns 0..6, player 1 owns 6..12. Action `i` sows the mover's `i`-th house.
//!
//! - Sowing skips the origin house when it comes around.
//! - If the last seed makes an opponent house hold 2 or 3, it is captured, and
//!   capturing continues backwards over opponent houses holding 2 or 3.
//! - A capture that would take every opponent seed is forfeited (no capture).
//! - 25+ captured seeds wins; 24-24 draws; a mover without seeds ends the game
//!   with each side keeping the seeds on its row; 1000 plies draws.
//!
//! Key body: 12 house bytes, the side to move, then both scores as big-endian
//! `u16` counters (omitted when scores are excluded).

use super::{Action, EngineError, ObservationKey, Outcome, Player};

pub const OWARE_SEEDS: u32 = 48;
pub const OWARE_PLY_CAP: u32 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Oware {
    houses: [u8; 12],
    scores: [u8; 2],
    to_move: Player,
}

fn owner(house: usize) -> Player {
    if house < 6 {
        Player::FIRST
    } else {
        Player::SECOND
    }
}

impl Oware {
    pub(crate) fn new() -> Self {
        Oware { houses: [4; 12], scores: [0, 0], to_move: Player::FIRST }
    }

    pub(crate) fn from_parts(houses: [u8; 12], scores: [u8; 2], to_move: Player) -> Result<Self, EngineError> {
        let total: u32 = houses.iter().chain(scores.iter()).map(|&v| u32::from(v)).sum();
        if total != OWARE_SEEDS {
            return Err(EngineError::MalformedKey(format!("oware: {total} seeds instead of 48")));
        }
        Ok(Oware { houses, scores, to_move })
    }

    pub(crate) fn to_move(&self) -> Player {
        self.to_move
    }

    pub(crate) fn houses(&self) -> [u8; 12] {
        self.houses
    }

    pub(crate) fn captures(&self) -> (u32, u32) {
        (u32::from(self.scores[0]), u32::from(self.scores[1]))
    }

    fn row(&self, p: Player) -> &[u8] {
        &self.houses[p.index() * 6..p.index() * 6 + 6]
    }

    pub(crate) fn legal_actions(&self, out: &mut Vec<Action>) {
        out.extend(
            self.row(self.to_move)
                .iter()
                .enumerate()
                .filter(|(_, &s)| s > 0)
                .map(|(i, _)| Action(i as u16)),
        );
    }

    pub(crate) fn apply(&mut self, action: Action, turn: u32) -> Result<Outcome, EngineError> {
        let me = self.to_move;
        if action.0 >= 6 {
            return Err(EngineError::IllegalAction(action.0));
        }
        let origin = me.index() * 6 + usize::from(action.0);
        let mut seeds = self.houses[origin];
        if seeds == 0 {
            return Err(EngineError::IllegalAction(action.0));
        }
        self.houses[origin] = 0;
        let mut pos = origin;
        while seeds > 0 {
            pos = (pos + 1) % 12;
            if pos == origin {
                continue;
            }
            self.houses[pos] += 1;
            seeds -= 1;
        }

        if owner(pos) != me {
            let opp_start = me.other().index() * 6;
            let mut captured = 0u8;
            let mut h = pos;
            let mut taken = Vec::with_capacity(6);
            while h >= opp_start && h < opp_start + 6 && matches!(self.houses[h], 2 | 3) {
                captured += self.houses[h];
                taken.push(h);
                if h == opp_start {
                    break;
                }
                h -= 1;
            }
            let opp_total: u8 = self.row(me.other()).iter().sum();
            // grand slam: taking everything is forbidden, so nothing is taken
            if captured > 0 && captured < opp_total {
                for h in taken {
                    self.houses[h] = 0;
                }
                self.scores[me.index()] += captured;
            }
        }
        self.to_move = me.other();
        Ok(self.outcome(turn))
    }

    pub(crate) fn outcome(&self, turn: u32) -> Outcome {
        let [s0, s1] = self.scores;
        if s0 >= 25 {
            return Outcome::Win(Player::FIRST);
        }
        if s1 >= 25 {
            return Outcome::Win(Player::SECOND);
        }
        if s0 == 24 && s1 == 24 {
            return Outcome::Draw;
        }
        if self.row(self.to_move).iter().all(|&s| s == 0) {
            // each side keeps what is left on its own row
            let f0 = u32::from(s0) + self.row(Player::FIRST).iter().map(|&v| u32::from(v)).sum::<u32>();
            let f1 = u32::from(s1) + self.row(Player::SECOND).iter().map(|&v| u32::from(v)).sum::<u32>();
            return match f0.cmp(&f1) {
                std::cmp::Ordering::Greater => Outcome::Win(Player::FIRST),
                std::cmp::Ordering::Less => Outcome::Win(Player::SECOND),
                std::cmp::Ordering::Equal => Outcome::Draw,
            };
        }
        if turn >= OWARE_PLY_CAP {
            return Outcome::Draw;
        }
        Outcome::Ongoing
    }

    pub(crate) fn encode(&self, key: &mut ObservationKey, with_scores: bool) {
        key.extend(&self.houses);
        key.push(self.to_move.index() as u8);
        if with_scores {
            key.push_u16(u16::from(self.scores[0]));
            key.push_u16(u16::from(self.scores[1]));
        }
    }
}

pub(crate) fn captures_from_key(body: &[u8]) -> Result<(u32, u32), EngineError> {
    match body.len() {
        17 => Ok((
            u32::from(u16::from_be_bytes([body[13], body[14]])),
            u32::from(u16::from_be_bytes([body[15], body[16]])),
        )),
        13 => Err(EngineError::MalformedKey("oware key was built without scores".into())),
        n => Err(EngineError::MalformedKey(format!("oware key body of {n} bytes"))),
    }
}
