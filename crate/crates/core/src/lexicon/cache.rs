//! Persistent replacement cache: an in-memory map with an append-only
//! JSON-lines file behind it. Reads are concurrent, writes serialized;
//! parallel generation workers share one cache.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::{Mutex, RwLock};

use super::{now_unix, ReplacementProvider, ReplacementSet, Warnings};
use crate::Result;

pub struct ReplacementCache {
    entries: RwLock<HashMap<String, ReplacementSet>>,
    sink: Option<Mutex<File>>,
    warnings: Warnings,
}

impl ReplacementCache {
    /// Cache with no backing file; entries live for the process only.
    pub fn in_memory() -> ReplacementCache {
        ReplacementCache {
            entries: RwLock::new(HashMap::new()),
            sink: None,
            warnings: Warnings::default(),
        }
    }

    /// Open (or create) a JSON-lines cache file. On duplicate words the last
    /// line wins, so re-fetched entries supersede older ones after reload.
    pub fn open(path: &Path) -> Result<ReplacementCache> {
        let mut entries = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            for line in reader.lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<ReplacementSet>(&line) {
                    Ok(set) => {
                        entries.insert(set.word.clone(), set);
                    }
                    Err(e) => {
                        // A torn final line from a crash is expected; skip it.
                        log::warn!("cache {}: skipping unreadable line: {e}", path.display());
                    }
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(ReplacementCache {
            entries: RwLock::new(entries),
            sink: Some(Mutex::new(file)),
            warnings: Warnings::default(),
        })
    }

    /// The lookup contract: cache hit returns the stored set without touching
    /// the provider; a miss fetches, stores (memory + file) and returns; an
    /// unreachable provider yields an uncached empty set plus a warning.
    pub fn lookup(&self, word: &str, provider: &dyn ReplacementProvider) -> ReplacementSet {
        let key = word.to_lowercase();
        if let Some(hit) = self.entries.read().unwrap().get(&key) {
            return hit.clone();
        }
        match provider.fetch(&key) {
            Ok(raw) => {
                let set = ReplacementSet::new(&key, raw, now_unix());
                {
                    let mut guard = self.entries.write().unwrap();
                    // Another worker may have fetched the same word meanwhile;
                    // keep its entry so all callers see one version.
                    if let Some(existing) = guard.get(&key) {
                        return existing.clone();
                    }
                    guard.insert(key, set.clone());
                }
                if let Some(sink) = &self.sink {
                    let line = serde_json::to_string(&set).expect("replacement sets serialize");
                    let mut file = sink.lock().unwrap();
                    if let Err(e) = writeln!(file, "{line}") {
                        self.warnings.push(format!("cache append failed for '{}': {e}", set.word));
                    }
                }
                set
            }
            Err(e) => {
                self.warnings.push(format!("replacement provider unreachable for '{key}': {e}"));
                ReplacementSet::empty(&key)
            }
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.read().unwrap().contains_key(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.read().unwrap().is_empty()
    }

    pub fn warnings(&self) -> Vec<String> {
        self.warnings.snapshot()
    }
}
