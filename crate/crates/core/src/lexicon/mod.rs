//! Pluggable lexical resources: replacement candidates per word, unigram and
//! bigram frequencies, and grammar checking. Each comes as a local
//! file-backed implementation plus an optional remote HTTP client, with a
//! persistent JSON-lines cache in front of the replacement providers.

mod cache;
mod frequency;
mod grammar;
mod providers;

pub use cache::ReplacementCache;
pub use frequency::{FrequencySource, FrequencyTable, RemoteFrequency};
pub use grammar::{GrammarChecker, GrammarVerdict, LocalGrammar, RemoteGrammar, DETERMINERS};
pub use providers::{LocalReplacements, RemoteReplacements};

use std::collections::HashSet;
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

/// How a candidate relates to the word it can replace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Synonym,
    Antonym,
    Associated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub text: String,
    pub relation: Relation,
}

/// Raw provider response before normalization, mirroring the wire format.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawReplacements {
    pub synonyms: Vec<String>,
    pub antonyms: Vec<String>,
    pub associated: Vec<String>,
}

/// Candidates for one word. Candidates are lowercase, deduplicated (first
/// relation wins) and never contain the word itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "RawEntry", into = "RawEntry")]
pub struct ReplacementSet {
    pub word: String,
    pub candidates: Vec<Candidate>,
    /// Unix seconds when the provider was queried; 0 for placeholder sets.
    pub fetched_at: i64,
}

impl ReplacementSet {
    pub fn new(word: &str, raw: RawReplacements, fetched_at: i64) -> ReplacementSet {
        let word = word.to_lowercase();
        let mut seen = HashSet::new();
        let mut candidates = Vec::new();
        let groups = [
            (raw.synonyms, Relation::Synonym),
            (raw.antonyms, Relation::Antonym),
            (raw.associated, Relation::Associated),
        ];
        for (texts, relation) in groups {
            for text in texts {
                let text = text.to_lowercase();
                if text != word && !text.is_empty() && seen.insert(text.clone()) {
                    candidates.push(Candidate { text, relation });
                }
            }
        }
        ReplacementSet { word, candidates, fetched_at }
    }

    pub fn empty(word: &str) -> ReplacementSet {
        ReplacementSet { word: word.to_lowercase(), candidates: Vec::new(), fetched_at: 0 }
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn texts(&self) -> impl Iterator<Item = &str> {
        self.candidates.iter().map(|c| c.text.as_str())
    }
}

/// One JSON object per word, the shape shared by the bundled fixture, the
/// cache file and the remote providers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub(crate) struct RawEntry {
    pub word: String,
    #[serde(default)]
    pub synonyms: Vec<String>,
    #[serde(default)]
    pub antonyms: Vec<String>,
    #[serde(default)]
    pub associated: Vec<String>,
    #[serde(default)]
    pub fetched_at: i64,
}

impl From<RawEntry> for ReplacementSet {
    fn from(e: RawEntry) -> ReplacementSet {
        ReplacementSet::new(
            &e.word,
            RawReplacements { synonyms: e.synonyms, antonyms: e.antonyms, associated: e.associated },
            e.fetched_at,
        )
    }
}

impl From<ReplacementSet> for RawEntry {
    fn from(s: ReplacementSet) -> RawEntry {
        let mut e = RawEntry {
            word: s.word,
            synonyms: Vec::new(),
            antonyms: Vec::new(),
            associated: Vec::new(),
            fetched_at: s.fetched_at,
        };
        for c in s.candidates {
            match c.relation {
                Relation::Synonym => e.synonyms.push(c.text),
                Relation::Antonym => e.antonyms.push(c.text),
                Relation::Associated => e.associated.push(c.text),
            }
        }
        e
    }
}

/// Source of replacement candidates, merging a thesaurus (synonyms plus
/// antonyms) with a word-association source. Errors mean the source is
/// unreachable; an unknown word is a successful empty response.
pub trait ReplacementProvider: Send + Sync {
    fn fetch(&self, word: &str) -> crate::Result<RawReplacements>;
}

/// Thread-safe accumulator for degraded-mode notices (provider unreachable,
/// fallbacks taken). Never fatal; surfaced to the caller after a run.
#[derive(Debug, Default)]
pub struct Warnings(Mutex<Vec<String>>);

impl Warnings {
    pub fn push(&self, msg: impl Into<String>) {
        self.0.lock().unwrap().push(msg.into());
    }

    pub fn snapshot(&self) -> Vec<String> {
        self.0.lock().unwrap().clone()
    }

    pub fn is_empty(&self) -> bool {
        self.0.lock().unwrap().is_empty()
    }
}

pub(crate) fn now_unix() -> i64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs() as i64)
        .unwrap_or(0)
}
