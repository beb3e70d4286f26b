//! On-disk cache of enumeration results.
//!
//! Entries are JSON lines keyed by a content hash of the canonical
//! EnumSpec serialization plus a code-version tag, so stale entries from
//! older builds are ignored rather than trusted.  Values are the raw
//! integer-count tables; cached and fresh runs are bit-identical by
//! construction.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::enumerate::{parallel_enumerate, EnumRaw, EnumSpec};
use crate::error::Result;

/// Bumped whenever the enumeration semantics or the raw format change.
const VERSION_TAG: &str = concat!(env!("CARGO_PKG_VERSION"), "/raw-v1");

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    version: String,
    raw: EnumRaw,
}

/// Append-only JSON-lines cache with an in-memory index.
pub struct Cache {
    path: PathBuf,
    map: RwLock<HashMap<String, EnumRaw>>,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Cache> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join("hexwalk-cache.jsonl");
        let mut map = HashMap::new();
        if path.exists() {
            let f = BufReader::new(File::open(&path)?);
            for line in f.lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                // tolerate unreadable or stale lines: the cache is advisory
                if let Ok(e) = serde_json::from_str::<Entry>(&line) {
                    if e.version == VERSION_TAG {
                        map.insert(e.key, e.raw);
                    }
                }
            }
        }
        Ok(Cache { path, map: RwLock::new(map) })
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn file_path(&self) -> &Path {
        &self.path
    }

    pub fn clear(&self) -> Result<()> {
        self.map.write().unwrap().clear();
        if self.path.exists() {
            std::fs::remove_file(&self.path)?;
        }
        Ok(())
    }

    fn get(&self, key: &str) -> Option<EnumRaw> {
        self.map.read().unwrap().get(key).cloned()
    }

    fn put(&self, key: String, raw: &EnumRaw) -> Result<()> {
        let entry = Entry {
            key: key.clone(),
            version: VERSION_TAG.to_string(),
            raw: raw.clone(),
        };
        let line = serde_json::to_string(&entry)?;
        {
            let mut f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(&self.path)?;
            writeln!(f, "{line}")?;
        }
        self.map.write().unwrap().insert(key, raw.clone());
        Ok(())
    }
}

/// Stable content key of an enumeration request.
pub fn spec_key(spec: &EnumSpec) -> String {
    let body = serde_json::to_string(spec).expect("spec serializes");
    let mut h = Sha256::new();
    h.update(VERSION_TAG.as_bytes());
    h.update(b"\0");
    h.update(body.as_bytes());
    h.finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Enumerate through the cache (when one is attached).
pub fn cached_enumerate(
    spec: &EnumSpec,
    workers: usize,
    cache: Option<&Cache>,
) -> Result<EnumRaw> {
    let key = cache.map(|_| spec_key(spec));
    if let (Some(c), Some(k)) = (cache, key.as_ref()) {
        if let Some(raw) = c.get(k) {
            return Ok(raw);
        }
    }
    let raw = parallel_enumerate(spec, workers)?;
    if let (Some(c), Some(k)) = (cache, key) {
        c.put(k, &raw)?;
    }
    Ok(raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;
    use crate::lattice::MidEdge;

    #[test]
    fn cache_roundtrip_identical() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let spec = EnumSpec::new(Domain::Triangle { k: 1 }, MidEdge::ORIGIN, 18);
        let fresh = parallel_enumerate(&spec, 2).unwrap();
        let first = cached_enumerate(&spec, 2, Some(&cache)).unwrap();
        assert_eq!(cache.len(), 1);
        let second = cached_enumerate(&spec, 2, Some(&cache)).unwrap();
        assert_eq!(
            serde_json::to_string(&fresh).unwrap(),
            serde_json::to_string(&first).unwrap()
        );
        assert_eq!(
            serde_json::to_string(&first).unwrap(),
            serde_json::to_string(&second).unwrap()
        );
        // reopen from disk
        let cache2 = Cache::open(dir.path()).unwrap();
        assert_eq!(cache2.len(), 1);
        let third = cached_enumerate(&spec, 2, Some(&cache2)).unwrap();
        assert_eq!(
            serde_json::to_string(&first).unwrap(),
            serde_json::to_string(&third).unwrap()
        );
        cache2.clear().unwrap();
        assert!(cache2.is_empty());
    }

    #[test]
    fn keys_separate_specs() {
        let a = EnumSpec::new(Domain::Triangle { k: 1 }, MidEdge::ORIGIN, 18);
        let mut b = a.clone();
        b.max_len = 17;
        assert_ne!(spec_key(&a), spec_key(&b));
    }
}
