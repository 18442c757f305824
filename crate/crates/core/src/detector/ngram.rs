//! Word-pair plausibility. Generated text tends to juxtapose words that
//! rarely co-occur in honest prose, so each adverb-verb or adjective-noun
//! adjacency is scored by how surprising the pairing is relative to a
//! reference frequency table.

use crate::lexicon::FrequencySource;
use crate::text::{Document, PosTag, Token};

/// Pair counts below this are "low frequency" for the purposes of the
/// overlapping-chain bonus.
pub const LOW_FREQ_THRESHOLD: u64 = 5;

/// Suspicion of a single word pair: f(w1) * f(w2) / (f(w1 w2) + 1).
/// Common words that never appear together score high; anything containing
/// an unknown word scores zero.
pub fn pair_suspicion(w1: &str, w2: &str, freqs: &impl FrequencySource) -> f64 {
    let f1 = freqs.unigram(w1) as f64;
    let f2 = freqs.unigram(w2) as f64;
    f1 * f2 / (freqs.bigram(w1, w2) as f64 + 1.0)
}

/// Mean pair suspicion over every adverb-verb and adjective-noun adjacency
/// in the document. A scored pair that is itself rare and overlaps a rare
/// neighboring pair (X-Y followed by Y-Z, sharing Y) counts twice. No
/// qualifying pairs yields 0.
pub fn ngram_doc_score(doc: &Document, freqs: &impl FrequencySource) -> f64 {
    let mut weighted = 0.0;
    let mut weight_sum = 0.0;
    for sentence in doc.sentences() {
        let tokens = &sentence.tokens;
        for i in 0..tokens.len().saturating_sub(1) {
            let (a, b) = (&tokens[i], &tokens[i + 1]);
            if !qualifying(a, b) {
                continue;
            }
            let score = pair_suspicion(&a.key(), &b.key(), freqs);
            let weight = if in_low_freq_chain(tokens, i, freqs) { 2.0 } else { 1.0 };
            weighted += weight * score;
            weight_sum += weight;
        }
    }
    if weight_sum == 0.0 {
        0.0
    } else {
        weighted / weight_sum
    }
}

fn qualifying(a: &Token, b: &Token) -> bool {
    a.is_word()
        && b.is_word()
        && matches!(
            (a.pos, b.pos),
            (PosTag::Adv, PosTag::Verb) | (PosTag::Adj, PosTag::Noun)
        )
}

/// True when the pair at `i` is rare and shares a word with an adjacent
/// rare pair: an X-Y, Y-Z chain of oddities, in either direction.
fn in_low_freq_chain(tokens: &[Token], i: usize, freqs: &impl FrequencySource) -> bool {
    let count =
        |a: &Token, b: &Token| -> u64 { freqs.bigram(&a.key(), &b.key()) };
    if count(&tokens[i], &tokens[i + 1]) >= LOW_FREQ_THRESHOLD {
        return false;
    }
    let before = i
        .checked_sub(1)
        .map(|j| &tokens[j])
        .filter(|t| t.is_word())
        .is_some_and(|t| count(t, &tokens[i]) < LOW_FREQ_THRESHOLD);
    let after = tokens
        .get(i + 2)
        .filter(|t| t.is_word())
        .is_some_and(|t| count(&tokens[i + 1], t) < LOW_FREQ_THRESHOLD);
    before || after
}
