//! Replacement-candidate providers: the bundled JSON-lines fixture and the
//! remote thesaurus + word-association client pair.

use std::collections::HashMap;
use std::path::Path;
use std::time::Duration;

use serde::Deserialize;

use super::{RawEntry, RawReplacements, ReplacementProvider};
use crate::{Error, Result};

const BUNDLED_REPLACEMENTS: &str = include_str!("../../lexicon/replacements.jsonl");

/// File-backed provider: every known word maps to a fixed candidate set,
/// everything else is a successful empty response.
#[derive(Debug)]
pub struct LocalReplacements {
    entries: HashMap<String, RawReplacements>,
}

impl LocalReplacements {
    pub fn bundled() -> &'static LocalReplacements {
        use std::sync::OnceLock;
        static SHARED: OnceLock<LocalReplacements> = OnceLock::new();
        SHARED.get_or_init(|| {
            LocalReplacements::parse(BUNDLED_REPLACEMENTS, "bundled replacements.jsonl")
                .expect("bundled replacement fixture is well-formed")
        })
    }

    pub fn load(path: &Path) -> Result<LocalReplacements> {
        let text = std::fs::read_to_string(path)?;
        LocalReplacements::parse(&text, &path.display().to_string())
    }

    fn parse(text: &str, origin: &str) -> Result<LocalReplacements> {
        let mut entries = HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let e: RawEntry = serde_json::from_str(line).map_err(|err| Error::Fixture {
                path: origin.into(),
                msg: format!("line {}: {err}", lineno + 1),
            })?;
            entries.insert(
                e.word.to_lowercase(),
                RawReplacements { synonyms: e.synonyms, antonyms: e.antonyms, associated: e.associated },
            );
        }
        Ok(LocalReplacements { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl ReplacementProvider for LocalReplacements {
    fn fetch(&self, word: &str) -> Result<RawReplacements> {
        Ok(self.entries.get(&word.to_lowercase()).cloned().unwrap_or_default())
    }
}

pub(crate) fn http_agent() -> ureq::Agent {
    ureq::builder().timeout(Duration::from_secs(5)).build()
}

/// Remote pair: `GET {thesaurus_url}?word=w` returning
/// `{"synonyms":[...],"antonyms":[...]}` and `GET {association_url}?word=w`
/// returning `{"associated":[...]}`. Missing fields default to empty; any
/// transport or decode failure is a provider error (the caller decides
/// whether to fall back).
pub struct RemoteReplacements {
    thesaurus_url: String,
    association_url: String,
    agent: ureq::Agent,
}

#[derive(Deserialize, Default)]
struct ThesaurusResponse {
    #[serde(default)]
    synonyms: Vec<String>,
    #[serde(default)]
    antonyms: Vec<String>,
}

#[derive(Deserialize, Default)]
struct AssociationResponse {
    #[serde(default)]
    associated: Vec<String>,
}

impl RemoteReplacements {
    pub fn new(thesaurus_url: &str, association_url: &str) -> RemoteReplacements {
        RemoteReplacements {
            thesaurus_url: thesaurus_url.into(),
            association_url: association_url.into(),
            agent: http_agent(),
        }
    }
}

impl ReplacementProvider for RemoteReplacements {
    fn fetch(&self, word: &str) -> Result<RawReplacements> {
        let thesaurus: ThesaurusResponse = get_json(&self.agent, &self.thesaurus_url, word)?;
        let association: AssociationResponse = get_json(&self.agent, &self.association_url, word)?;
        Ok(RawReplacements {
            synonyms: thesaurus.synonyms,
            antonyms: thesaurus.antonyms,
            associated: association.associated,
        })
    }
}

pub(crate) fn get_json<T: serde::de::DeserializeOwned>(
    agent: &ureq::Agent,
    url: &str,
    word: &str,
) -> Result<T> {
    agent
        .get(url)
        .query("word", word)
        .call()
        .map_err(|e| Error::Provider(format!("GET {url}?word={word}: {e}")))?
        .into_json()
        .map_err(|e| Error::Provider(format!("GET {url}?word={word}: bad JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixture_loads() {
        let local = LocalReplacements::bundled();
        assert!(local.len() >= 40);
    }

    #[test]
    fn addition_entry_covers_expected_candidates() {
        let raw = LocalReplacements::bundled().fetch("Addition").unwrap();
        let all: Vec<&str> = raw
            .synonyms
            .iter()
            .chain(&raw.antonyms)
            .chain(&raw.associated)
            .map(String::as_str)
            .collect();
        for expected in [
            "decrease", "lessening", "loss", "reduction", "shrinkage", "extension",
            "inclusion", "enlargement", "annexation", "augmentation", "moreover",
        ] {
            assert!(all.contains(&expected), "missing {expected}");
        }
    }

    #[test]
    fn unknown_word_is_a_successful_empty_response() {
        let raw = LocalReplacements::bundled().fetch("qzxv").unwrap();
        assert_eq!(raw, RawReplacements::default());
    }

    #[test]
    fn malformed_fixture_line_is_rejected_with_location() {
        let err = LocalReplacements::parse("{\"word\":\"a\"}\nnot json\n", "test.jsonl")
            .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("test.jsonl") && msg.contains("line 2"), "{msg}");
    }
}
