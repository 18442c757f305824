//! Word-frequency sources. The local table is loaded from two TSV fixtures;
//! the remote client speaks `GET {url}?word=...` returning `{"count": n}`
//! and falls back to the local table when unreachable.

use std::collections::HashMap;
use std::path::Path;
use std::sync::OnceLock;

use serde::Deserialize;

use super::providers::{get_json, http_agent};
use super::Warnings;
use crate::{Error, Result};

const BUNDLED_UNIGRAMS: &str = include_str!("../../lexicon/unigrams.tsv");
const BUNDLED_BIGRAMS: &str = include_str!("../../lexicon/bigrams.tsv");

/// Frequency lookups never fail: absent keys count 0, remote trouble falls
/// back internally. Queries are matched case-insensitively.
pub trait FrequencySource: Send + Sync {
    fn unigram(&self, w: &str) -> u64;
    fn bigram(&self, w1: &str, w2: &str) -> u64;
}

#[derive(Debug)]
pub struct FrequencyTable {
    unigram: HashMap<String, u64>,
    bigram: HashMap<(String, String), u64>,
}

impl FrequencyTable {
    /// The table built from the bundled corpus fixtures.
    pub fn bundled() -> &'static FrequencyTable {
        static SHARED: OnceLock<FrequencyTable> = OnceLock::new();
        SHARED.get_or_init(|| {
            FrequencyTable::parse(BUNDLED_UNIGRAMS, BUNDLED_BIGRAMS, "bundled frequency tsv")
                .expect("bundled frequency fixtures are well-formed")
        })
    }

    pub fn load(unigram_path: &Path, bigram_path: &Path) -> Result<FrequencyTable> {
        let unigrams = std::fs::read_to_string(unigram_path)?;
        let bigrams = std::fs::read_to_string(bigram_path)?;
        FrequencyTable::parse(&unigrams, &bigrams, &unigram_path.display().to_string())
    }

    fn parse(unigrams: &str, bigrams: &str, origin: &str) -> Result<FrequencyTable> {
        let bad = |lineno: usize, line: &str| Error::Fixture {
            path: origin.into(),
            msg: format!("line {}: expected tab-separated fields, got {line:?}", lineno + 1),
        };
        let mut unigram = HashMap::new();
        for (lineno, line) in unigrams.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            match (fields.next(), fields.next(), fields.next()) {
                (Some(w), Some(n), None) => {
                    let count = n.parse().map_err(|_| bad(lineno, line))?;
                    unigram.insert(w.to_lowercase(), count);
                }
                _ => return Err(bad(lineno, line)),
            }
        }
        let mut bigram = HashMap::new();
        for (lineno, line) in bigrams.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            match (fields.next(), fields.next(), fields.next(), fields.next()) {
                (Some(a), Some(b), Some(n), None) => {
                    let count = n.parse().map_err(|_| bad(lineno, line))?;
                    bigram.insert((a.to_lowercase(), b.to_lowercase()), count);
                }
                _ => return Err(bad(lineno, line)),
            }
        }
        Ok(FrequencyTable { unigram, bigram })
    }

    /// Build a table directly from counts; handy for tests and tools.
    pub fn from_counts<U, B>(unigrams: U, bigrams: B) -> FrequencyTable
    where
        U: IntoIterator<Item = (String, u64)>,
        B: IntoIterator<Item = ((String, String), u64)>,
    {
        FrequencyTable {
            unigram: unigrams.into_iter().map(|(w, n)| (w.to_lowercase(), n)).collect(),
            bigram: bigrams
                .into_iter()
                .map(|((a, b), n)| ((a.to_lowercase(), b.to_lowercase()), n))
                .collect(),
        }
    }

    pub fn unigram_types(&self) -> usize {
        self.unigram.len()
    }
}

impl FrequencySource for FrequencyTable {
    fn unigram(&self, w: &str) -> u64 {
        self.unigram.get(&w.to_lowercase()).copied().unwrap_or(0)
    }

    fn bigram(&self, w1: &str, w2: &str) -> u64 {
        self.bigram
            .get(&(w1.to_lowercase(), w2.to_lowercase()))
            .copied()
            .unwrap_or(0)
    }
}

#[derive(Deserialize)]
struct CountResponse {
    count: u64,
}

/// Remote frequency service; a bigram is queried as one space-joined `word`
/// parameter. Unreachable service → local fallback count plus a warning.
pub struct RemoteFrequency {
    url: String,
    agent: ureq::Agent,
    fallback: &'static FrequencyTable,
    warnings: Warnings,
}

impl RemoteFrequency {
    pub fn new(url: &str) -> RemoteFrequency {
        RemoteFrequency {
            url: url.into(),
            agent: http_agent(),
            fallback: FrequencyTable::bundled(),
            warnings: Warnings::default(),
        }
    }

    fn query(&self, words: &str) -> Result<u64> {
        get_json::<CountResponse>(&self.agent, &self.url, words).map(|r| r.count)
    }

    pub fn warnings(&self) -> Vec<String> {
        self.warnings.snapshot()
    }
}

impl FrequencySource for RemoteFrequency {
    fn unigram(&self, w: &str) -> u64 {
        self.query(w).unwrap_or_else(|e| {
            self.warnings.push(format!("frequency service unreachable: {e}"));
            self.fallback.unigram(w)
        })
    }

    fn bigram(&self, w1: &str, w2: &str) -> u64 {
        self.query(&format!("{w1} {w2}")).unwrap_or_else(|e| {
            self.warnings.push(format!("frequency service unreachable: {e}"));
            self.fallback.bigram(w1, w2)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn absent_keys_count_zero() {
        let table = FrequencyTable::bundled();
        assert_eq!(table.unigram("qzxv"), 0);
        assert_eq!(table.bigram("qzxv", "the"), 0);
    }

    #[test]
    fn of_the_matches_the_corpus_count() {
        // One-pass count over lexicon/corpus.txt, frozen when the fixture
        // was built.
        assert_eq!(FrequencyTable::bundled().bigram("of", "the"), 15);
    }

    #[test]
    fn bigrams_are_order_sensitive() {
        let table = FrequencyTable::bundled();
        assert!(table.bigram("of", "the") != table.bigram("the", "of"));
    }

    #[test]
    fn lookups_ignore_case() {
        let table = FrequencyTable::bundled();
        assert_eq!(table.unigram("The"), table.unigram("the"));
        assert!(table.unigram("The") > 0);
    }

    #[test]
    fn malformed_tsv_is_rejected_with_location() {
        let err = FrequencyTable::parse("the\t3\nbroken line\n", "", "uni.tsv").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("uni.tsv") && msg.contains("line 2"), "{msg}");
    }
}
