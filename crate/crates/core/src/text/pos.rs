//! Part-of-speech tagging: closed function-word list, then the bundled
//! lexicon, then suffix heuristics. Tags drive noun substitution in the faker
//! and the bigram pair selection in the detector.

use std::collections::HashMap;
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};

use super::PosTag;

/// Closed-class words. These never participate in noun substitution and are
/// tagged before any lexicon lookup so a noisy lexicon cannot reclassify them.
pub const FUNCTION_WORDS: &[&str] = &[
    "a", "an", "the", "this", "that", "these", "those", "some", "any", "no", "each", "every",
    "either", "neither", "both", "all", "most", "few", "several", "such", "i", "you", "he", "she",
    "it", "we", "they", "me", "him", "her", "us", "them", "my", "your", "his", "its", "our",
    "their", "mine", "yours", "hers", "ours", "theirs", "myself", "yourself", "himself",
    "herself", "itself", "ourselves", "themselves", "who", "whom", "whose", "which", "what",
    "where", "when", "why", "how", "of", "in", "on", "at", "by", "for", "with", "about",
    "against", "between", "among", "into", "through", "during", "before", "after", "above",
    "below", "to", "from", "up", "down", "over", "under", "again", "further", "then", "once",
    "here", "there", "and", "but", "or", "nor", "so", "yet", "if", "because", "as", "until",
    "while", "although", "though", "unless", "since", "whether", "not", "only", "than", "too",
    "very", "just", "also", "now", "be", "am", "is", "are", "was", "were", "been", "being",
    "have", "has", "had", "having", "do", "does", "did", "doing", "will", "would", "shall",
    "should", "can", "could", "may", "might", "must", "ought", "there's", "it's", "don't",
    "doesn't", "didn't", "isn't", "aren't", "wasn't", "weren't", "won't", "wouldn't", "can't",
    "couldn't", "shouldn't", "per",
];

/// Word to tag map loaded from a two-column TSV (`word<TAB>tag`).
#[derive(Debug, Clone, Default)]
pub struct PosLexicon {
    entries: HashMap<String, PosTag>,
}

impl PosLexicon {
    pub fn from_tsv(text: &str) -> Result<PosLexicon> {
        let mut entries = HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split('\t');
            let (word, tag) = match (cols.next(), cols.next()) {
                (Some(w), Some(t)) => (w, t),
                _ => {
                    return Err(Error::Fixture {
                        path: "pos lexicon".into(),
                        msg: format!("line {}: expected word<TAB>tag", lineno + 1),
                    })
                }
            };
            let tag = PosTag::parse(tag).ok_or_else(|| Error::Fixture {
                path: "pos lexicon".into(),
                msg: format!("line {}: unknown tag {tag:?}", lineno + 1),
            })?;
            entries.insert(word.to_lowercase(), tag);
        }
        Ok(PosLexicon { entries })
    }

    pub fn load(path: &Path) -> Result<PosLexicon> {
        let text = std::fs::read_to_string(path)?;
        PosLexicon::from_tsv(&text)
    }

    /// The lexicon bundled with the crate, parsed once.
    pub fn shared() -> &'static PosLexicon {
        static SHARED: OnceLock<PosLexicon> = OnceLock::new();
        SHARED.get_or_init(|| {
            PosLexicon::from_tsv(include_str!("../../lexicon/pos.tsv"))
                .expect("bundled pos.tsv is well-formed")
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Tag one word: function-word list, then lexicon, then suffix shape.
    pub fn tag(&self, word: &str) -> PosTag {
        let key = word.to_lowercase();
        if FUNCTION_WORDS.contains(&key.as_str()) {
            return PosTag::Function;
        }
        if let Some(&tag) = self.entries.get(&key) {
            return tag;
        }
        suffix_tag(&key)
    }
}

fn suffix_tag(key: &str) -> PosTag {
    const NOUN: &[&str] = &["tion", "sion", "ment", "ness", "ship", "ance", "ence"];
    const VERB: &[&str] = &["ize", "ise", "ify"];
    const ADJ: &[&str] = &["ous", "ful", "ive", "able", "ible", "al", "ic"];
    if key.ends_with("ly") && key.len() > 4 {
        return PosTag::Adv;
    }
    for s in NOUN {
        if key.ends_with(s) && key.len() > s.len() + 2 {
            return PosTag::Noun;
        }
    }
    for s in VERB {
        if key.ends_with(s) && key.len() > s.len() + 2 {
            return PosTag::Verb;
        }
    }
    for s in ADJ {
        if key.ends_with(s) && key.len() > s.len() + 2 {
            return PosTag::Adj;
        }
    }
    PosTag::Other
}

/// Tag against the bundled lexicon.
pub fn pos_tag(word: &str) -> PosTag {
    PosLexicon::shared().tag(word)
}
