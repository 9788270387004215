//! Content-addressed result cache.
//!
//! Each entry is one JSON file named by the SHA-256 of the canonical key. The
//! key and value are stored alongside metadata (wall time); only the value is
//! ever handed back to callers.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Bumped whenever the layout of keys or values changes.
pub const CACHE_VERSION: u32 = 1;

pub struct Cache {
    dir: PathBuf,
    writer: Mutex<()>,
    counter: AtomicU64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GcStats {
    pub kept: usize,
    pub removed: usize,
}

/// Canonical bytes of a JSON value: object keys sorted, no whitespace.
pub fn canonical_json(v: &Value) -> String {
    // serde_json's default map is a BTreeMap, so keys serialize sorted
    serde_json::to_string(v).expect("json value")
}

pub fn key_hash(key: &Value) -> String {
    hex::encode(Sha256::digest(canonical_json(key).as_bytes()))
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self {
            dir,
            writer: Mutex::new(()),
            counter: AtomicU64::new(0),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.json"))
    }

    /// Cached value for `key`, if a readable entry of the current version exists.
    pub fn get<T: DeserializeOwned>(&self, key: &Value) -> Option<T> {
        let text = fs::read_to_string(self.path_for(&key_hash(key))).ok()?;
        let entry: Value = serde_json::from_str(&text).ok()?;
        if entry.get("version")?.as_u64()? != CACHE_VERSION as u64 || entry.get("key")? != key {
            return None;
        }
        serde_json::from_value(entry.get("value")?.clone()).ok()
    }

    /// Writes an entry atomically: a temporary file renamed into place.
    pub fn put<T: Serialize>(&self, key: &Value, value: &T, elapsed_ms: u128) -> io::Result<()> {
        let entry = json!({
            "version": CACHE_VERSION,
            "key": key,
            "value": serde_json::to_value(value).map_err(io::Error::other)?,
            "metadata": { "elapsed_ms": elapsed_ms as u64 },
        });
        let hash = key_hash(key);
        let _guard = self.writer.lock().unwrap_or_else(|e| e.into_inner());
        let tmp = self.dir.join(format!(
            ".{hash}.{}.{}.tmp",
            std::process::id(),
            self.counter.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, canonical_json(&entry))?;
        fs::rename(&tmp, self.path_for(&hash))
    }

    /// Returns the cached value or computes, stores and returns it. Errors are
    /// never cached, and a failed write only costs the cache entry.
    pub fn get_or_compute<T, E>(&self, key: &Value, compute: impl FnOnce() -> Result<T, E>) -> Result<T, E>
    where
        T: Serialize + DeserializeOwned,
    {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let start = Instant::now();
        let v = compute()?;
        let _ = self.put(key, &v, start.elapsed().as_millis());
        Ok(v)
    }

    /// Removes temporary leftovers, unreadable entries, entries from other
    /// cache versions, and entries whose file name does not match their key.
    pub fn gc(&self) -> io::Result<GcStats> {
        let _guard = self.writer.lock().unwrap_or_else(|e| e.into_inner());
        let mut stats = GcStats::default();
        for item in fs::read_dir(&self.dir)? {
            let path = item?.path();
            let name = path
                .file_name()
                .and_then(|n| n.to_str())
                .unwrap_or_default()
                .to_string();
            if !path.is_file() {
                continue;
            }
            let keep = name
                .strip_suffix(".json")
                .filter(|_| !name.starts_with('.'))
                .is_some_and(|hash| entry_is_valid(&path, hash));
            if keep {
                stats.kept += 1;
            } else if name.ends_with(".json") || name.ends_with(".tmp") {
                fs::remove_file(&path)?;
                stats.removed += 1;
            }
        }
        Ok(stats)
    }
}

fn entry_is_valid(path: &Path, hash: &str) -> bool {
    let Ok(text) = fs::read_to_string(path) else {
        return false;
    };
    let Ok(entry) = serde_json::from_str::<Value>(&text) else {
        return false;
    };
    entry.get("version").and_then(Value::as_u64) == Some(CACHE_VERSION as u64)
        && entry.get("value").is_some()
        && entry.get("key").is_some_and(|k| key_hash(k) == hash)
}
