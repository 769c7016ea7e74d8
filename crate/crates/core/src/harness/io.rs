//! Table file format, all integers big-endian:
//!
//! ```text
//! magic "GZLFREQ\0" | version u16 | game id u8 | config sha256 [32]
//! games_played u64 | states_recorded u64 | states_visited u64
//! min_complete_count u32 | entries u64
//! entries x (key_len u16 | key | count u64 | turn_sum u64 | turn_sq_sum u64 | first_seen_turn u32)
//! ```
//!
//! Entries are sorted by key bytes, so equal tables serialize identically.

use std::io::{BufRead, Read, Write};

use super::{Entry, FrequencyTable, HarnessError};
use crate::engines::{GameId, ObservationKey};

pub const TABLE_MAGIC: [u8; 8] = *b"GZLFREQ\0";
pub const TABLE_VERSION: u16 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableHeader {
    pub version: u16,
    pub game: GameId,
    pub config_digest: [u8; 32],
}

pub fn write_table<W: Write>(mut w: W, table: &FrequencyTable, config_digest: &[u8; 32]) -> Result<(), HarnessError> {
    w.write_all(&TABLE_MAGIC)?;
    w.write_all(&TABLE_VERSION.to_be_bytes())?;
    w.write_all(&[table.game.as_byte()])?;
    w.write_all(config_digest)?;
    for v in [table.games_played, table.states_recorded, table.states_visited] {
        w.write_all(&v.to_be_bytes())?;
    }
    w.write_all(&table.min_complete_count.to_be_bytes())?;
    w.write_all(&(table.len() as u64).to_be_bytes())?;
    for (key, e) in table.sorted_by_key() {
        let bytes = key.as_bytes();
        let len = u16::try_from(bytes.len()).map_err(|_| HarnessError::Format("key longer than 65535 bytes".into()))?;
        w.write_all(&len.to_be_bytes())?;
        w.write_all(bytes)?;
        for v in [e.count, e.turn_sum, e.turn_sq_sum] {
            w.write_all(&v.to_be_bytes())?;
        }
        w.write_all(&e.first_seen_turn.to_be_bytes())?;
    }
    w.flush()?;
    Ok(())
}

fn read_array<const N: usize, R: Read>(r: &mut R) -> Result<[u8; N], HarnessError> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => HarnessError::Format("truncated file".into()),
        _ => HarnessError::Io(e),
    })?;
    Ok(buf)
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64, HarnessError> {
    Ok(u64::from_be_bytes(read_array(r)?))
}

pub fn read_table<R: BufRead>(mut r: R) -> Result<(TableHeader, FrequencyTable), HarnessError> {
    if read_array::<8, _>(&mut r)? != TABLE_MAGIC {
        return Err(HarnessError::Format("bad magic".into()));
    }
    let version = u16::from_be_bytes(read_array(&mut r)?);
    if version != TABLE_VERSION {
        return Err(HarnessError::Format(format!("unsupported version {version}")));
    }
    let [game_byte] = read_array(&mut r)?;
    let game = GameId::from_byte(game_byte).map_err(|e| HarnessError::Format(e.to_string()))?;
    let config_digest = read_array(&mut r)?;
    let mut table = FrequencyTable::new(game);
    table.games_played = read_u64(&mut r)?;
    let declared_recorded = read_u64(&mut r)?;
    table.states_visited = read_u64(&mut r)?;
    table.min_complete_count = u32::from_be_bytes(read_array(&mut r)?);
    let n = read_u64(&mut r)?;
    let mut recorded = 0u64;
    let mut prev: Option<ObservationKey> = None;
    for _ in 0..n {
        let len = usize::from(u16::from_be_bytes(read_array(&mut r)?));
        let mut key_bytes = vec![0u8; len];
        r.read_exact(&mut key_bytes).map_err(|_| HarnessError::Format("truncated key".into()))?;
        let key = ObservationKey::from_bytes(&key_bytes).map_err(|e| HarnessError::Format(e.to_string()))?;
        if key.game() != game {
            return Err(HarnessError::Format("key of another game".into()));
        }
        if prev.as_ref().is_some_and(|p| *p >= key) {
            return Err(HarnessError::Format("entries not strictly sorted".into()));
        }
        let e = Entry {
            count: read_u64(&mut r)?,
            turn_sum: read_u64(&mut r)?,
            turn_sq_sum: read_u64(&mut r)?,
            first_seen_turn: u32::from_be_bytes(read_array(&mut r)?),
        };
        if e.count == 0 {
            return Err(HarnessError::Format("zero count".into()));
        }
        recorded += e.count;
        prev = Some(key.clone());
        table.entries.insert(key, e);
    }
    if recorded != declared_recorded {
        return Err(HarnessError::Format(format!("counts sum to {recorded}, header says {declared_recorded}")));
    }
    if !r.fill_buf()?.is_empty() {
        return Err(HarnessError::Format("trailing bytes".into()));
    }
    table.states_recorded = recorded;
    Ok((TableHeader { version, game, config_digest }, table))
}

/// `key_hex,count,mean_turn` in rank order. Returns the number of data rows.
pub fn write_csv<W: Write>(mut w: W, table: &FrequencyTable) -> Result<usize, HarnessError> {
    writeln!(w, "key_hex,count,mean_turn")?;
    let ranked = table.ranked();
    for (k, e) in &ranked {
        writeln!(w, "{},{},{}", k.to_hex(), e.count, e.mean_turn())?;
    }
    w.flush()?;
    Ok(ranked.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> FrequencyTable {
        let mut t = FrequencyTable::new(GameId::Pentago);
        for (b, turn) in [(3u8, 1), (1, 2), (3, 5), (2, 2)] {
            t.record(ObservationKey::from_bytes(&[1, b, b]).unwrap(), turn);
        }
        t.finish_game();
        t
    }

    #[test]
    fn binary_round_trip() {
        let t = sample();
        let mut buf = Vec::new();
        write_table(&mut buf, &t, &[7; 32]).unwrap();
        let (h, back) = read_table(&buf[..]).unwrap();
        assert_eq!(h, TableHeader { version: TABLE_VERSION, game: GameId::Pentago, config_digest: [7; 32] });
        assert_eq!(back, t);
        let mut again = Vec::new();
        write_table(&mut again, &back, &[7; 32]).unwrap();
        assert_eq!(again, buf);
    }

    #[test]
    fn rejects_corruption() {
        let mut buf = Vec::new();
        write_table(&mut buf, &sample(), &[0; 32]).unwrap();
        assert!(read_table(&buf[..buf.len() - 1]).is_err());
        let mut extra = buf.clone();
        extra.push(0);
        assert!(read_table(&extra[..]).is_err());
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(read_table(&bad[..]).is_err());
    }

    #[test]
    fn csv_in_rank_order() {
        let mut out = Vec::new();
        assert_eq!(write_csv(&mut out, &sample()).unwrap(), 3);
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "key_hex,count,mean_turn");
        assert_eq!(lines[1], "010303,2,3");
    }
}
