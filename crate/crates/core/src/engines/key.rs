use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::{EngineError, GameId};

/// Inline capacity covers every standard board's key without allocating.
const INLINE: usize = 48;

/// History-free canonical byte encoding of a position, used as the state
/// identity for frequency counting. Ordering is lexicographic on the bytes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObservationKey(SmallVec<[u8; INLINE]>);

impl ObservationKey {
    pub(crate) fn with_game(game: GameId) -> Self {
        let mut v = SmallVec::new();
        v.push(game.as_byte());
        ObservationKey(v)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, EngineError> {
        match bytes.first() {
            None => Err(EngineError::MalformedKey("empty key".into())),
            Some(&b) => {
                GameId::from_byte(b)?;
                Ok(ObservationKey(SmallVec::from_slice(bytes)))
            }
        }
    }

    pub fn from_hex(s: &str) -> Result<Self, EngineError> {
        let bytes = hex::decode(s.trim()).map_err(|e| EngineError::MalformedKey(e.to_string()))?;
        Self::from_bytes(&bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn game(&self) -> GameId {
        GameId::from_byte(self.0[0]).expect("keys are built with a valid game byte")
    }

    pub(crate) fn push(&mut self, b: u8) {
        self.0.push(b);
    }

    pub(crate) fn extend(&mut self, bytes: &[u8]) {
        self.0.extend_from_slice(bytes);
    }

    pub(crate) fn push_u16(&mut self, v: u16) {
        self.0.extend_from_slice(&v.to_be_bytes());
    }
}

impl fmt::Debug for ObservationKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ObservationKey({})", self.to_hex())
    }
}

impl fmt::Display for ObservationKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Encoding switches.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyOptions {
    /// Include both Oware scores. Turning this off merges positions that
    /// differ only in captured seeds (configuration counting).
    pub oware_scores: bool,
}

impl Default for KeyOptions {
    fn default() -> Self {
        KeyOptions { oware_scores: true }
    }
}

/// Reads (player 0, player 1) captures straight from an Oware or Checkers key.
pub fn capture_counts_from_key(key: &ObservationKey) -> Result<(u32, u32), EngineError> {
    let bytes = key.as_bytes();
    match key.game() {
        GameId::Oware => super::oware::captures_from_key(&bytes[1..]),
        GameId::Checkers => super::checkers::captures_from_key(&bytes[1..]),
        other => Err(EngineError::CapturesUnsupported(other)),
    }
}
