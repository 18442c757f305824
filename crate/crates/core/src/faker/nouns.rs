//! Overlap-controlled word substitution. Each eligible token is replaced
//! with probability (1 - overlap) by a candidate drawn from its replacement
//! set; a substitution that fails the grammar check is retried with a
//! different candidate a bounded number of times, then abandoned.

use rand::Rng;

use super::{RelationWeights, SubstitutePos};
use crate::lexicon::{Candidate, GrammarChecker, ReplacementCache, ReplacementProvider};
use crate::text::{pos_tag, Document, PosTag, Token};

/// Retries after the first rejected candidate before keeping the original.
pub const GRAMMAR_RETRIES: usize = 3;

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct NounStats {
    /// Tokens matching the part-of-speech filter.
    pub eligible: usize,
    /// Eligible tokens whose (1 - overlap) coin came up.
    pub attempted: usize,
    /// Attempts that ended with a candidate in place.
    pub replaced: usize,
}

pub fn substitute_nouns(
    doc: &Document,
    overlap: f64,
    cache: &ReplacementCache,
    provider: &dyn ReplacementProvider,
    checker: &dyn GrammarChecker,
    rng: &mut impl Rng,
) -> Document {
    substitute_nouns_stats(
        doc,
        overlap,
        SubstitutePos::Nouns,
        RelationWeights::default(),
        cache,
        provider,
        checker,
        rng,
    )
    .0
}

#[allow(clippy::too_many_arguments)]
pub fn substitute_nouns_stats(
    doc: &Document,
    overlap: f64,
    pos: SubstitutePos,
    weights: RelationWeights,
    cache: &ReplacementCache,
    provider: &dyn ReplacementProvider,
    checker: &dyn GrammarChecker,
    rng: &mut impl Rng,
) -> (Document, NounStats) {
    let mut stats = NounStats::default();
    let mut paragraphs = Vec::with_capacity(doc.paragraphs.len());
    for para in &doc.paragraphs {
        let mut sentences = Vec::with_capacity(para.sentences.len());
        for sent in &para.sentences {
            let mut tokens = sent.tokens.clone();
            for j in 0..tokens.len() {
                if !eligible(&tokens[j], pos) {
                    continue;
                }
                stats.eligible += 1;
                if rng.gen::<f64>() >= 1.0 - overlap {
                    continue;
                }
                stats.attempted += 1;
                let set = cache.lookup(&tokens[j].key(), provider);
                if set.is_empty() {
                    continue;
                }
                if try_candidates(&mut tokens, j, &set.candidates, weights, checker, rng) {
                    stats.replaced += 1;
                }
            }
            sentences.push(tokens.into_iter().map(|t| t.surface).collect::<Vec<_>>());
        }
        paragraphs.push(sentences);
    }
    (Document::from_surfaces(paragraphs), stats)
}

fn eligible(token: &Token, pos: SubstitutePos) -> bool {
    token.is_word()
        && match pos {
            SubstitutePos::Nouns => token.pos == PosTag::Noun,
            SubstitutePos::OpenClass => {
                matches!(token.pos, PosTag::Noun | PosTag::Verb | PosTag::Adj | PosTag::Adv)
            }
        }
}

/// Draw candidates without replacement (weighted by relation) until one
/// passes the grammar check. On success the token stays patched; after
/// 1 + GRAMMAR_RETRIES rejections the original is restored.
fn try_candidates(
    tokens: &mut [Token],
    j: usize,
    candidates: &[Candidate],
    weights: RelationWeights,
    checker: &dyn GrammarChecker,
    rng: &mut impl Rng,
) -> bool {
    let original_surface = tokens[j].surface.clone();
    let original_pos = tokens[j].pos;
    let mut pool: Vec<&Candidate> =
        candidates.iter().filter(|c| weights.weight(c.relation) > 0.0).collect();
    for _ in 0..=GRAMMAR_RETRIES {
        if pool.is_empty() {
            break;
        }
        let pick = weighted_pick(&pool, weights, rng);
        let candidate = pool.swap_remove(pick);
        let surface = match_case(&candidate.text, &original_surface);
        tokens[j].pos = pos_tag(&candidate.text);
        tokens[j].surface = surface;
        if checker.check(tokens).is_ok() {
            return true;
        }
    }
    tokens[j].surface = original_surface;
    tokens[j].pos = original_pos;
    false
}

fn weighted_pick(pool: &[&Candidate], weights: RelationWeights, rng: &mut impl Rng) -> usize {
    let total: f64 = pool.iter().map(|c| weights.weight(c.relation)).sum();
    let mut u = rng.gen::<f64>() * total;
    for (i, c) in pool.iter().enumerate() {
        u -= weights.weight(c.relation);
        if u <= 0.0 {
            return i;
        }
    }
    pool.len() - 1
}

/// Candidates are stored lowercase; re-capitalize when the token being
/// replaced started with an uppercase letter.
fn match_case(candidate: &str, original: &str) -> String {
    let needs_upper = original.chars().next().is_some_and(|c| c.is_uppercase());
    if !needs_upper {
        return candidate.to_string();
    }
    let mut chars = candidate.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}
