//! Resolution order: command-line flags, then the JSON config file, then
//! the defaults of the resolved struct. Unset flags serialize as `null`
//! and are dropped before merging.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;

pub const SEED_ENV: &str = "GZL_SEED";

pub fn resolve<F: Serialize, R: DeserializeOwned>(config: Option<&Path>, flags: &F) -> Result<R, CliError> {
    let mut merged = match config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(CliError::io(path))?;
            match serde_json::from_str::<Value>(&text) {
                Ok(Value::Object(m)) => m,
                Ok(_) => return Err(CliError::Config(format!("{}: expected a JSON object", path.display()))),
                Err(e) => return Err(CliError::Config(format!("{}: {e}", path.display()))),
            }
        }
        None => Map::new(),
    };
    match serde_json::to_value(flags).map_err(|e| CliError::Config(e.to_string()))? {
        Value::Object(f) => merged.extend(f.into_iter().filter(|(_, v)| !v.is_null())),
        _ => unreachable!("flag structs serialize to objects"),
    }
    serde_json::from_value(Value::Object(merged)).map_err(|e| CliError::Config(e.to_string()))
}

/// Explicit seed, else `GZL_SEED`, else 0.
pub fn seed_or_env(seed: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Config(format!("{SEED_ENV}={v} is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

/// Integer that may be written in float notation, e.g. `1e8`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if f.is_finite() && f >= 0.0 && f.fract() == 0.0 && f <= u64::MAX as f64 {
        Ok(f as u64)
    } else {
        Err(format!("not a non-negative integer: {s}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Deserialize;

    #[derive(Serialize)]
    struct Flags {
        a: Option<u32>,
        b: Option<u32>,
    }

    #[derive(Deserialize, Debug, PartialEq)]
    #[serde(default, deny_unknown_fields)]
    struct Resolved {
        a: u32,
        b: u32,
        c: u32,
    }

    impl Default for Resolved {
        fn default() -> Self {
            Resolved { a: 1, b: 2, c: 3 }
        }
    }

    #[test]
    fn flags_override_file_override_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("c.json");
        fs::write(&file, r#"{"a": 10, "b": 20}"#).unwrap();
        let r: Resolved = resolve(Some(&file), &Flags { a: None, b: Some(200) }).unwrap();
        assert_eq!(r, Resolved { a: 10, b: 200, c: 3 });
        fs::write(&file, r#"{"zzz": 1}"#).unwrap();
        assert!(resolve::<_, Resolved>(Some(&file), &Flags { a: None, b: None }).is_err());
    }

    #[test]
    fn counts_in_float_notation() {
        assert_eq!(parse_count("1e8"), Ok(100_000_000));
        assert_eq!(parse_count("42"), Ok(42));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
    }
}
