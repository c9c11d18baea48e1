//! On-disk result cache.
//!
//! Entries are keyed by `(level, weight, operator, precision, crate version)`
//! and stored as one JSON file per key, named by the SHA-256 of the key.
//! Writes go through a temporary file in the same directory followed by a
//! rename, so concurrent writers never expose a partial entry. Anything that
//! fails to parse or does not match its key is deleted and recomputed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;

pub const ENV_VAR: &str = "EIGENWALK_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub level: String,
    pub k: u32,
    pub op: String,
    pub prec: usize,
    pub version: String,
}

impl CacheKey {
    pub fn new(level: impl Into<String>, k: u32, op: impl Into<String>, prec: usize) -> Self {
        Self {
            level: level.into(),
            k,
            op: op.into(),
            prec,
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }

    pub fn digest(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("key serialization cannot fail");
        Sha256::digest(&canonical)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: CacheKey,
    pub payload: String,
    /// Seconds since the Unix epoch; metadata only.
    pub created_at: u64,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir })
    }

    /// The flag value if given, else the environment variable, else no cache.
    pub fn from_env(flag: Option<&Path>) -> Result<Option<Self>> {
        match flag.map(Path::to_path_buf).or_else(|| std::env::var_os(ENV_VAR).map(PathBuf::from)) {
            Some(dir) => Ok(Some(Self::new(dir)?)),
            None => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    pub fn get(&self, key: &CacheKey) -> Option<String> {
        let path = self.path(key);
        let bytes = fs::read(&path).ok()?;
        match serde_json::from_slice::<CacheEntry>(&bytes) {
            Ok(entry) if entry.key == *key => Some(entry.payload),
            _ => {
                let _ = fs::remove_file(&path);
                None
            }
        }
    }

    pub fn put(&self, key: &CacheKey, payload: &str) -> Result<()> {
        let entry = CacheEntry {
            key: key.clone(),
            payload: payload.to_owned(),
            created_at: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(&serde_json::to_vec(&entry)?)?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }

    /// Cached payload, or compute and store it.
    pub fn get_or_compute(&self, key: &CacheKey, compute: impl FnOnce() -> Result<String>) -> Result<(String, bool)> {
        if let Some(hit) = self.get(key) {
            return Ok((hit, true));
        }
        let fresh = compute()?;
        self.put(key, &fresh)?;
        Ok((fresh, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_eviction() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let key = CacheKey::new("sl2z", 12, "t2", 40);
        assert_eq!(cache.get(&key), None);
        cache.put(&key, "payload").unwrap();
        assert_eq!(cache.get(&key).as_deref(), Some("payload"));

        fs::write(cache.path(&key), b"{not json").unwrap();
        assert_eq!(cache.get(&key), None);
        assert!(!cache.path(&key).exists());

        let (v, hit) = cache.get_or_compute(&key, || Ok("x".into())).unwrap();
        assert_eq!((v.as_str(), hit), ("x", false));
        let (v, hit) = cache.get_or_compute(&key, || unreachable!()).unwrap();
        assert_eq!((v.as_str(), hit), ("x", true));
    }

    #[test]
    fn keys_differ() {
        let a = CacheKey::new("sl2z", 12, "t2", 40);
        let b = CacheKey::new("sl2z", 12, "t2", 41);
        assert_ne!(a.digest(), b.digest());
        assert_eq!(a.digest().len(), 64);
    }

    #[test]
    fn concurrent_writers() {
        let dir = tempfile::tempdir().unwrap();
        let key = CacheKey::new("gamma0_2", 12, "u2", 30);
        std::thread::scope(|s| {
            for _ in 0..8 {
                let cache = Cache::new(dir.path()).unwrap();
                let key = key.clone();
                s.spawn(move || cache.put(&key, "same").unwrap());
            }
        });
        let cache = Cache::new(dir.path()).unwrap();
        assert_eq!(cache.get(&key).as_deref(), Some("same"));
        let leftovers = fs::read_dir(dir.path()).unwrap().count();
        assert_eq!(leftovers, 1);
    }
}
