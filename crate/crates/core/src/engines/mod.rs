//! Rule-complete engines behind one immutable [`GameState`] value.
//!
//! Every game uses a fixed action space so that action indices and
//! observation keys are stable across runs:
//!
//! | game         | actions | encoding                                              |
//! |--------------|---------|-------------------------------------------------------|
//! | Connect Four | `width` | column index, left to right                           |
//! | Pentago      | 288     | `cell * 8 + quadrant * 2 + direction`                 |
//! | Oware        | 6       | house index on the mover's side, in sowing order      |
//! | Checkers     | 128     | `from_square * 4 + direction`                         |
//! | Toy          | `b`     | branch index                                          |
//!
//! Observation keys are `[game id][board bytes, row-major][to_move][counters, big-endian]`;
//! the per-game layouts are documented on each engine module.

mod checkers;
mod connect_four;
mod key;
mod oware;
mod pentago;
mod toy;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use checkers::{CheckersPiece, CHECKERS_ACTIONS, CHECKERS_DRAW_PLIES, CHECKERS_PLY_CAP};
pub use connect_four::{ConnectFour, MAX_CONNECT_FOUR_CELLS};
pub use key::{capture_counts_from_key, KeyOptions, ObservationKey};
pub use oware::{OWARE_PLY_CAP, OWARE_SEEDS};
pub use pentago::PENTAGO_ACTIONS;
pub use toy::MAX_TOY_BRANCHING;

pub(crate) use checkers::Checkers;
pub(crate) use oware::Oware;
pub(crate) use pentago::Pentago;
pub(crate) use toy::Toy;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("the toy game needs branching/length parameters")]
    MissingToyParams,
    #[error("{0} takes no toy parameters")]
    UnexpectedToyParams(GameId),
    #[error("invalid toy parameters: {0}")]
    InvalidToyParams(String),
    #[error("unsupported board size {width}x{height}")]
    BadDimensions { width: u8, height: u8 },
    #[error("no legal actions: the game is over")]
    Terminal,
    #[error("illegal action {0}")]
    IllegalAction(u16),
    #[error("{0} does not track captures")]
    CapturesUnsupported(GameId),
    #[error("unknown game {0:?}")]
    UnknownGame(String),
    #[error("malformed observation key: {0}")]
    MalformedKey(String),
}

/// The closed set of supported games.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GameId {
    ConnectFour,
    Pentago,
    Oware,
    Checkers,
    ToyIdeal,
}

impl GameId {
    pub const ALL: [GameId; 5] = [
        GameId::ConnectFour,
        GameId::Pentago,
        GameId::Oware,
        GameId::Checkers,
        GameId::ToyIdeal,
    ];

    /// Byte used as the first byte of observation keys and in table headers.
    pub fn as_byte(self) -> u8 {
        match self {
            GameId::ConnectFour => 0,
            GameId::Pentago => 1,
            GameId::Oware => 2,
            GameId::Checkers => 3,
            GameId::ToyIdeal => 4,
        }
    }

    pub fn from_byte(b: u8) -> Result<Self, EngineError> {
        GameId::ALL
            .into_iter()
            .find(|g| g.as_byte() == b)
            .ok_or_else(|| EngineError::UnknownGame(format!("byte {b}")))
    }

    pub fn name(self) -> &'static str {
        match self {
            GameId::ConnectFour => "connect4",
            GameId::Pentago => "pentago",
            GameId::Oware => "oware",
            GameId::Checkers => "checkers",
            GameId::ToyIdeal => "toy",
        }
    }

    pub fn tracks_captures(self) -> bool {
        matches!(self, GameId::Oware | GameId::Checkers)
    }
}

impl fmt::Display for GameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GameId {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "connect4" | "connectfour" | "connect-four" | "c4" => Ok(GameId::ConnectFour),
            "pentago" => Ok(GameId::Pentago),
            "oware" => Ok(GameId::Oware),
            "checkers" | "draughts" => Ok(GameId::Checkers),
            "toy" | "toyideal" | "ideal" => Ok(GameId::ToyIdeal),
            other => Err(EngineError::UnknownGame(other.to_string())),
        }
    }
}

/// Player index, 0 moves first.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Player(u8);

impl Player {
    pub const FIRST: Player = Player(0);
    pub const SECOND: Player = Player(1);

    pub fn new(index: u8) -> Option<Self> {
        (index < 2).then_some(Player(index))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn other(self) -> Player {
        Player(1 - self.0)
    }
}

/// Index into a game's fixed action space.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Action(pub u16);

impl Action {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Win(Player),
    Draw,
    Ongoing,
}

impl Outcome {
    pub fn is_terminal(self) -> bool {
        !matches!(self, Outcome::Ongoing)
    }

    /// +1 / 0 / -1 from `player`'s point of view; `None` while ongoing.
    pub fn value_for(self, player: Player) -> Option<i8> {
        match self {
            Outcome::Win(w) if w == player => Some(1),
            Outcome::Win(_) => Some(-1),
            Outcome::Draw => Some(0),
            Outcome::Ongoing => None,
        }
    }
}

/// Parameters of the constant-branching toy game.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToyParams {
    /// Branching factor `b`.
    pub branching: u16,
    /// Game length `K` in turns.
    pub length: u32,
    /// Optional per-branch move probabilities (length `b`, summing to 1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prefs: Option<Vec<f64>>,
}

impl ToyParams {
    pub fn new(branching: u16, length: u32) -> Result<Self, EngineError> {
        let p = ToyParams { branching, length, prefs: None };
        p.validate()?;
        Ok(p)
    }

    pub fn with_prefs(branching: u16, length: u32, prefs: Vec<f64>) -> Result<Self, EngineError> {
        let p = ToyParams { branching, length, prefs: Some(prefs) };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if self.branching < 2 {
            return Err(EngineError::InvalidToyParams(format!(
                "branching factor must be >= 2, got {}",
                self.branching
            )));
        }
        if usize::from(self.branching) > MAX_TOY_BRANCHING {
            return Err(EngineError::InvalidToyParams(format!(
                "branching factor must be <= {MAX_TOY_BRANCHING}, got {}",
                self.branching
            )));
        }
        if self.length < 1 {
            return Err(EngineError::InvalidToyParams("game length must be >= 1".into()));
        }
        if let Some(prefs) = &self.prefs {
            validate_prefs(prefs, usize::from(self.branching))?;
        }
        Ok(())
    }
}

/// Checks a branch-preference vector: right length, nonnegative, sums to 1 within 1e-12.
pub fn validate_prefs(prefs: &[f64], branching: usize) -> Result<(), EngineError> {
    if prefs.len() != branching {
        return Err(EngineError::InvalidToyParams(format!(
            "expected {branching} preferences, got {}",
            prefs.len()
        )));
    }
    if prefs.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(EngineError::InvalidToyParams("preferences must be finite and nonnegative".into()));
    }
    let sum: f64 = prefs.iter().sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(EngineError::InvalidToyParams(format!("preferences sum to {sum}, not 1")));
    }
    Ok(())
}

/// Everything needed to construct a game's initial state; serializable for configs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameSetup {
    pub game: GameId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toy: Option<ToyParams>,
    /// Connect Four board size as (width, height); standard 7x6 when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub board: Option<(u8, u8)>,
}

impl GameSetup {
    pub fn new(game: GameId) -> Self {
        GameSetup { game, toy: None, board: None }
    }

    pub fn toy(params: ToyParams) -> Self {
        GameSetup { game: GameId::ToyIdeal, toy: Some(params), board: None }
    }

    pub fn connect_four(width: u8, height: u8) -> Self {
        GameSetup { game: GameId::ConnectFour, toy: None, board: Some((width, height)) }
    }

    pub fn initial_state(&self) -> Result<GameState, EngineError> {
        match (self.game, self.board) {
            (GameId::ConnectFour, Some((w, h))) => GameState::connect_four(w, h),
            (_, Some((width, height))) => Err(EngineError::BadDimensions { width, height }),
            (id, None) => new_game(id, self.toy.as_ref()),
        }
    }

    /// Rule-imposed maximum number of plies.
    pub fn max_plies(&self) -> u32 {
        match self.game {
            GameId::ConnectFour => {
                let (w, h) = self.board.unwrap_or((7, 6));
                u32::from(w) * u32::from(h)
            }
            GameId::Pentago => 36,
            GameId::Oware => OWARE_PLY_CAP,
            GameId::Checkers => CHECKERS_PLY_CAP,
            GameId::ToyIdeal => self.toy.as_ref().map_or(1, |t| t.length),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Board {
    ConnectFour(ConnectFour),
    Pentago(Pentago),
    Oware(Oware),
    Checkers(Checkers),
    Toy(Toy),
}

/// A full game position. Immutable from the outside: [`GameState::apply`]
/// returns the successor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameState {
    pub(crate) board: Board,
    turn: u32,
    outcome: Outcome,
}

/// Canonical initial state of `id`. `params` is required for (and only for) the toy game.
pub fn new_game(id: GameId, params: Option<&ToyParams>) -> Result<GameState, EngineError> {
    let board = match (id, params) {
        (GameId::ToyIdeal, None) => return Err(EngineError::MissingToyParams),
        (GameId::ToyIdeal, Some(p)) => {
            p.validate()?;
            Board::Toy(Toy::new(p.branching, p.length))
        }
        (other, Some(_)) => return Err(EngineError::UnexpectedToyParams(other)),
        (GameId::ConnectFour, None) => Board::ConnectFour(ConnectFour::new(7, 6)?),
        (GameId::Pentago, None) => Board::Pentago(Pentago::new()),
        (GameId::Oware, None) => Board::Oware(Oware::new()),
        (GameId::Checkers, None) => Board::Checkers(Checkers::new()),
    };
    Ok(GameState { board, turn: 0, outcome: Outcome::Ongoing })
}

impl GameState {
    pub fn new(id: GameId, params: Option<&ToyParams>) -> Result<Self, EngineError> {
        new_game(id, params)
    }

    /// Connect Four on a `width x height` board (`width * (height + 1) <= 64`).
    pub fn connect_four(width: u8, height: u8) -> Result<Self, EngineError> {
        Ok(GameState {
            board: Board::ConnectFour(ConnectFour::new(width, height)?),
            turn: 0,
            outcome: Outcome::Ongoing,
        })
    }

    pub fn game_id(&self) -> GameId {
        match &self.board {
            Board::ConnectFour(_) => GameId::ConnectFour,
            Board::Pentago(_) => GameId::Pentago,
            Board::Oware(_) => GameId::Oware,
            Board::Checkers(_) => GameId::Checkers,
            Board::Toy(_) => GameId::ToyIdeal,
        }
    }

    /// Number of `apply` calls since the initial state.
    pub fn turn(&self) -> u32 {
        self.turn
    }

    pub fn to_move(&self) -> Player {
        match &self.board {
            Board::ConnectFour(b) => b.to_move(),
            Board::Pentago(b) => b.to_move(),
            Board::Oware(b) => b.to_move(),
            Board::Checkers(b) => b.to_move(),
            Board::Toy(b) => b.to_move(),
        }
    }

    pub fn outcome(&self) -> Outcome {
        self.outcome
    }

    pub fn is_terminal(&self) -> bool {
        self.outcome.is_terminal()
    }

    /// Legal actions in ascending index order.
    pub fn legal_actions(&self) -> Result<Vec<Action>, EngineError> {
        let mut out = Vec::new();
        self.legal_actions_into(&mut out)?;
        Ok(out)
    }

    /// Like [`legal_actions`](Self::legal_actions) but reuses `out`.
    pub fn legal_actions_into(&self, out: &mut Vec<Action>) -> Result<(), EngineError> {
        out.clear();
        if self.is_terminal() {
            return Err(EngineError::Terminal);
        }
        match &self.board {
            Board::ConnectFour(b) => b.legal_actions(out),
            Board::Pentago(b) => b.legal_actions(out),
            Board::Oware(b) => b.legal_actions(out),
            Board::Checkers(b) => b.legal_actions(out),
            Board::Toy(b) => b.legal_actions(out),
        }
        Ok(())
    }

    pub fn apply(&self, action: Action) -> Result<GameState, EngineError> {
        let mut next = self.clone();
        next.play(action)?;
        Ok(next)
    }

    /// In-place [`apply`](Self::apply) for owners of a state (rollouts, replays).
    pub fn play(&mut self, action: Action) -> Result<(), EngineError> {
        if self.is_terminal() {
            return Err(EngineError::Terminal);
        }
        let next_turn = self.turn + 1;
        self.outcome = match &mut self.board {
            Board::ConnectFour(b) => b.apply(action)?,
            Board::Pentago(b) => b.apply(action)?,
            Board::Oware(b) => b.apply(action, next_turn)?,
            Board::Checkers(b) => b.apply(action, next_turn)?,
            Board::Toy(b) => b.apply(action)?,
        };
        self.turn = next_turn;
        Ok(())
    }

    pub fn observation_key(&self) -> ObservationKey {
        self.observation_key_with(KeyOptions::default())
    }

    pub fn observation_key_with(&self, opts: KeyOptions) -> ObservationKey {
        let mut key = ObservationKey::with_game(self.game_id());
        match &self.board {
            Board::ConnectFour(b) => b.encode(&mut key),
            Board::Pentago(b) => b.encode(&mut key),
            Board::Oware(b) => b.encode(&mut key, opts.oware_scores),
            Board::Checkers(b) => b.encode(&mut key),
            Board::Toy(b) => b.encode(&mut key),
        }
        key
    }

    /// Pieces (Checkers) or seeds (Oware) captured by (player 0, player 1).
    pub fn capture_counts(&self) -> Result<(u32, u32), EngineError> {
        match &self.board {
            Board::Oware(b) => Ok(b.captures()),
            Board::Checkers(b) => Ok(b.captures()),
            _ => Err(EngineError::CapturesUnsupported(self.game_id())),
        }
    }

    /// True when both states show the same position (board, side to move and
    /// value-relevant counters), irrespective of how they were reached.
    pub fn same_position(&self, other: &GameState) -> bool {
        match (&self.board, &other.board) {
            (Board::Checkers(a), Board::Checkers(b)) => a.same_position(b),
            (a, b) => a == b,
        }
    }

    /// Reconstructs a Connect Four, Pentago or toy state from its key. The
    /// other games' keys do not determine the turn counter.
    pub fn from_observation_key(key: &ObservationKey, toy: Option<&ToyParams>) -> Result<GameState, EngineError> {
        let bytes = key.as_bytes();
        let game = GameId::from_byte(*bytes.first().ok_or_else(|| EngineError::MalformedKey("empty".into()))?)?;
        let body = &bytes[1..];
        let (board, turn) = match game {
            GameId::ConnectFour => {
                let b = ConnectFour::decode(body)?;
                let turn = b.disk_count();
                (Board::ConnectFour(b), turn)
            }
            GameId::Pentago => {
                let b = Pentago::decode(body)?;
                let turn = b.stone_count();
                (Board::Pentago(b), turn)
            }
            GameId::ToyIdeal => {
                let p = toy.ok_or(EngineError::MissingToyParams)?;
                p.validate()?;
                let b = Toy::decode(body, p.branching, p.length)?;
                let turn = b.len();
                (Board::Toy(b), turn)
            }
            other => {
                return Err(EngineError::MalformedKey(format!("{other} keys do not determine the turn counter")))
            }
        };
        let mut state = GameState { board, turn, outcome: Outcome::Ongoing };
        state.outcome = match &state.board {
            Board::ConnectFour(b) => b.outcome_from_scratch(),
            Board::Pentago(b) => b.outcome_from_scratch(),
            Board::Toy(b) => b.outcome(),
            _ => unreachable!(),
        };
        Ok(state)
    }

    pub(crate) fn as_connect_four(&self) -> Option<&ConnectFour> {
        match &self.board {
            Board::ConnectFour(b) => Some(b),
            _ => None,
        }
    }

    /// Connect Four only: (width, height).
    pub fn board_size(&self) -> Option<(u8, u8)> {
        self.as_connect_four().map(|b| (b.width(), b.height()))
    }

    /// Plies left before the board is full (Connect Four, Pentago).
    pub fn remaining_plies(&self) -> Option<u32> {
        match &self.board {
            Board::ConnectFour(b) => Some(b.cells() - b.disk_count()),
            Board::Pentago(b) => Some(36 - b.stone_count()),
            Board::Toy(b) => Some(b.length() - b.len()),
            _ => None,
        }
    }

    /// Toy game only: the move sequence so far.
    pub fn move_sequence(&self) -> Option<&[u8]> {
        match &self.board {
            Board::Toy(b) => Some(b.sequence()),
            _ => None,
        }
    }

    /// Oware only: seeds per house (player 0 houses 0..6, player 1 houses 6..12).
    pub fn oware_houses(&self) -> Option<[u8; 12]> {
        match &self.board {
            Board::Oware(b) => Some(b.houses()),
            _ => None,
        }
    }

    /// Checkers only: pieces per player.
    pub fn checkers_piece_counts(&self) -> Option<(u32, u32)> {
        match &self.board {
            Board::Checkers(b) => Some(b.piece_counts()),
            _ => None,
        }
    }

    /// Test and fixture helper: an Oware position from raw parts.
    pub fn oware_from_parts(houses: [u8; 12], scores: [u8; 2], to_move: Player, turn: u32) -> Result<Self, EngineError> {
        let b = Oware::from_parts(houses, scores, to_move)?;
        let outcome = b.outcome(turn);
        Ok(GameState { board: Board::Oware(b), turn, outcome })
    }

    /// Test and fixture helper: a Checkers position from `(square, piece)` pairs.
    pub fn checkers_from_parts(
        pieces: &[(u8, CheckersPiece)],
        to_move: Player,
        turn: u32,
        plies_since_capture: u16,
    ) -> Result<Self, EngineError> {
        let b = Checkers::from_parts(pieces, to_move, plies_since_capture)?;
        let outcome = b.outcome(turn);
        Ok(GameState { board: Board::Checkers(b), turn, outcome })
    }

    /// Connect Four from a move string of 0-based column digits.
    pub fn connect_four_from_moves(width: u8, height: u8, moves: &str) -> Result<Self, EngineError> {
        let mut s = GameState::connect_four(width, height)?;
        for ch in moves.chars() {
            let col = ch.to_digit(10).ok_or(EngineError::IllegalAction(u16::MAX))?;
            s.play(Action(col as u16))?;
        }
        Ok(s)
    }
}
