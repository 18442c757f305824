//! Zipf-shape divergence. A document's type frequencies, ranked, should
//! fall off like g(1)/r; block substitution from a foreign bank flattens or
//! distorts that profile.

use std::collections::HashMap;

use crate::text::Document;

const RANK_CUTOFF: usize = 200;
const MIN_TYPES: usize = 10;

/// Normalized L1 distance between the ranked type-frequency profile and the
/// ideal g(1)/r reference, over ranks 1..min(V, 200). Documents with fewer
/// than ten word types return None (not applicable).
pub fn zipf_divergence(doc: &Document) -> Option<f64> {
    let mut counts: HashMap<String, u64> = HashMap::new();
    for token in doc.word_tokens() {
        *counts.entry(token.key()).or_insert(0) += 1;
    }
    divergence_of_counts(counts.into_values())
}

/// Same computation over a bare frequency multiset; the document front-end
/// just counts types.
pub fn divergence_of_counts(counts: impl IntoIterator<Item = u64>) -> Option<f64> {
    let mut g: Vec<u64> = counts.into_iter().collect();
    if g.len() < MIN_TYPES {
        return None;
    }
    g.sort_unstable_by(|a, b| b.cmp(a));
    g.truncate(RANK_CUTOFF);
    let top = g[0] as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, &count) in g.iter().enumerate() {
        let reference = top / (i + 1) as f64;
        num += (count as f64 - reference).abs();
        den += count as f64;
    }
    Some(num / den)
}
