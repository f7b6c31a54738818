//! Shared, optionally file-backed store for Euler characteristic results.
//!
//! Keys are SHA-256 digests of the canonical system form, so the file stays
//! compact and line noise in keys cannot corrupt lookups. The whole map is
//! loaded at open time and rewritten on flush (last writer wins); losing a
//! flush costs recomputation only.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Mutex;

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use torzeta_core::euler::{EulerCache, EulerResult};
use torzeta_core::Int;

#[derive(Debug)]
pub enum CacheError {
    Io(std::io::Error),
    /// The file exists but some record does not parse; carries the record.
    Corrupt {
        record: String,
    },
}

impl fmt::Display for CacheError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CacheError::Io(e) => write!(f, "cache io error: {e}"),
            CacheError::Corrupt { record } => {
                write!(f, "corrupted cache record: {record}")
            }
        }
    }
}

impl std::error::Error for CacheError {}

impl From<std::io::Error> for CacheError {
    fn from(e: std::io::Error) -> CacheError {
        CacheError::Io(e)
    }
}

fn digest(key: &str) -> String {
    let mut h = Sha256::new();
    h.update(key.as_bytes());
    let out = h.finalize();
    let mut s = String::with_capacity(64);
    for byte in out {
        use fmt::Write as _;
        write!(s, "{byte:02x}").expect("hex digest");
    }
    s
}

fn record_to_value(result: &EulerResult) -> Value {
    let mut m = Map::new();
    match result {
        EulerResult::Value(v) => m.insert("value".into(), Value::String(v.to_string())),
        EulerResult::Failure(reason) => {
            m.insert("failure".into(), Value::String(reason.clone()))
        }
    };
    Value::Object(m)
}

fn record_from_value(key: &str, value: &Value) -> Result<EulerResult, CacheError> {
    let corrupt = || CacheError::Corrupt {
        record: format!("{key}: {value}"),
    };
    if key.len() != 64 || !key.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(corrupt());
    }
    let obj = value.as_object().ok_or_else(corrupt)?;
    if obj.len() != 1 {
        return Err(corrupt());
    }
    if let Some(v) = obj.get("value") {
        let s = v.as_str().ok_or_else(corrupt)?;
        let n = Int::from_str(s).map_err(|_| corrupt())?;
        return Ok(EulerResult::Value(n));
    }
    if let Some(v) = obj.get("failure") {
        let s = v.as_str().ok_or_else(corrupt)?;
        return Ok(EulerResult::Failure(s.to_string()));
    }
    Err(corrupt())
}

/// Thread-safe Euler result store. `get`/`put` touch memory only; `flush`
/// persists to the backing file when one is configured.
pub struct SharedCache {
    path: Option<PathBuf>,
    map: Mutex<BTreeMap<String, EulerResult>>,
}

impl SharedCache {
    pub fn in_memory() -> SharedCache {
        SharedCache {
            path: None,
            map: Mutex::new(BTreeMap::new()),
        }
    }

    /// Opens a file-backed cache; a missing file starts empty.
    pub fn open(path: &Path) -> Result<SharedCache, CacheError> {
        let mut map = BTreeMap::new();
        match std::fs::read_to_string(path) {
            Ok(text) => {
                let value: Value = serde_json::from_str(&text).map_err(|e| {
                    CacheError::Corrupt {
                        record: format!("(whole file): {e}"),
                    }
                })?;
                let obj = value.as_object().ok_or(CacheError::Corrupt {
                    record: "(whole file): not an object".to_string(),
                })?;
                for (k, v) in obj {
                    map.insert(k.clone(), record_from_value(k, v)?);
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(e.into()),
        }
        Ok(SharedCache {
            path: Some(path.to_path_buf()),
            map: Mutex::new(map),
        })
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rewrites the backing file from the current map; a no-op without one.
    pub fn flush(&self) -> std::io::Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let map = self.map.lock().expect("cache lock");
        let mut obj = Map::new();
        for (k, v) in map.iter() {
            obj.insert(k.clone(), record_to_value(v));
        }
        let text = serde_json::to_string_pretty(&Value::Object(obj)).expect("serialize cache");
        let mut file = std::fs::File::create(path)?;
        file.write_all(text.as_bytes())?;
        file.write_all(b"\n")
    }
}

impl EulerCache for SharedCache {
    fn get(&self, key: &str) -> Option<EulerResult> {
        self.map
            .lock()
            .expect("cache lock")
            .get(&digest(key))
            .cloned()
    }

    fn put(&self, key: &str, value: &EulerResult) {
        self.map
            .lock()
            .expect("cache lock")
            .insert(digest(key), value.clone());
    }
}

impl Drop for SharedCache {
    fn drop(&mut self) {
        let _ = self.flush();
    }
}
