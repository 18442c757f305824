//! Document model shared by the faker and the detector suite: tokenization,
//! token classification (word / number / date / punctuation), lightweight
//! lexicon-based part-of-speech tagging, and the paragraph > sentence > token
//! structure.

mod dates;
mod pos;
mod tokenize;

pub use dates::{format_date, parse_date, DateFormat, ParsedDate};
pub use pos::{pos_tag, PosLexicon, FUNCTION_WORDS};
pub use tokenize::{detokenize, tokenize};

use std::ops::Range;

/// Surface class of a token. `Number` and `Date` are disjoint: date patterns
/// are tried before the digit-string grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenClass {
    Word,
    Number,
    Date,
    Punct,
}

/// Coarse part-of-speech tag. Closed-class words (articles, pronouns,
/// prepositions, auxiliaries) are tagged `Function`; anything the lexicon and
/// the suffix heuristics cannot place is `Other`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PosTag {
    Noun,
    Verb,
    Adj,
    Adv,
    Function,
    Other,
}

impl PosTag {
    pub fn parse(s: &str) -> Option<PosTag> {
        match s.to_ascii_lowercase().as_str() {
            "noun" | "n" => Some(PosTag::Noun),
            "verb" | "v" => Some(PosTag::Verb),
            "adj" | "adjective" | "a" => Some(PosTag::Adj),
            "adv" | "adverb" | "r" => Some(PosTag::Adv),
            "function" | "fn" => Some(PosTag::Function),
            "other" => Some(PosTag::Other),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub surface: String,
    pub class: TokenClass,
    pub pos: PosTag,
    /// Byte offsets into the source text of the document this token belongs to.
    pub span: Range<usize>,
}

impl Token {
    pub fn is_word(&self) -> bool {
        self.class == TokenClass::Word
    }

    /// Lowercased surface, the key used for frequency and replacement lookups.
    pub fn key(&self) -> String {
        self.surface.to_lowercase()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Sentence {
    pub tokens: Vec<Token>,
}

impl Sentence {
    pub fn surfaces(&self) -> Vec<&str> {
        self.tokens.iter().map(|t| t.surface.as_str()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Paragraph {
    pub sentences: Vec<Sentence>,
}

impl Paragraph {
    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flat_map(|s| s.tokens.iter())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Document {
    pub paragraphs: Vec<Paragraph>,
    pub source: String,
}

impl Document {
    pub fn is_empty(&self) -> bool {
        self.paragraphs.is_empty()
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.paragraphs.iter().flat_map(|p| p.tokens())
    }

    pub fn word_tokens(&self) -> impl Iterator<Item = &Token> {
        self.tokens().filter(|t| t.is_word())
    }

    pub fn sentences(&self) -> impl Iterator<Item = &Sentence> {
        self.paragraphs.iter().flat_map(|p| p.sentences.iter())
    }

    pub fn token_count(&self) -> usize {
        self.tokens().count()
    }

    /// Rebuild a document from bare token surfaces, re-deriving source text,
    /// spans, classes and sentence boundaries. Substitution passes use this so
    /// the structural invariants hold by construction afterwards.
    pub fn from_surfaces(paragraphs: Vec<Vec<Vec<String>>>) -> Document {
        let text = tokenize::render_surfaces(&paragraphs);
        tokenize(&text)
    }

    /// Token surfaces grouped paragraph > sentence, the working form for the
    /// substitution passes.
    pub fn to_surfaces(&self) -> Vec<Vec<Vec<String>>> {
        self.paragraphs
            .iter()
            .map(|p| {
                p.sentences
                    .iter()
                    .map(|s| s.tokens.iter().map(|t| t.surface.clone()).collect())
                    .collect()
            })
            .collect()
    }
}
