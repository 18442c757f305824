//! Paragraph and sentence substitution from a user-supplied bank. Each
//! paragraph is considered for wholesale replacement or expansion with
//! probability (1 - overlap); sentences of paragraphs that were not replaced
//! are then considered individually.

use rand::Rng;

use super::Bank;
use crate::text::Document;

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct BlockStats {
    pub paragraphs_total: usize,
    pub paragraphs_replaced: usize,
    pub paragraphs_expanded: usize,
    pub sentences_considered: usize,
    pub sentences_replaced: usize,
}

impl BlockStats {
    pub fn paragraphs_modified(&self) -> usize {
        self.paragraphs_replaced + self.paragraphs_expanded
    }
}

pub fn substitute_blocks(
    doc: &Document,
    bank: &Bank,
    overlap: f64,
    rng: &mut impl Rng,
) -> Document {
    substitute_blocks_stats(doc, bank, overlap, rng).0
}

pub fn substitute_blocks_stats(
    doc: &Document,
    bank: &Bank,
    overlap: f64,
    rng: &mut impl Rng,
) -> (Document, BlockStats) {
    let mut stats = BlockStats { paragraphs_total: doc.paragraphs.len(), ..BlockStats::default() };
    if bank.is_empty() {
        return (doc.clone(), stats);
    }
    let mut paragraphs = doc.to_surfaces();
    let mut replaced = vec![false; paragraphs.len()];

    for (p, para) in paragraphs.iter_mut().enumerate() {
        if rng.gen::<f64>() >= 1.0 - overlap {
            continue;
        }
        // Coin flip between replacement and expansion; if the bank lacks one
        // kind of entry, fall back to the other.
        let replace = if bank.paragraphs.is_empty() {
            false
        } else if bank.sentences.is_empty() {
            true
        } else {
            rng.gen::<bool>()
        };
        if replace {
            *para = bank.paragraphs[rng.gen_range(0..bank.paragraphs.len())].clone();
            replaced[p] = true;
            stats.paragraphs_replaced += 1;
        } else {
            let sentence = bank.sentences[rng.gen_range(0..bank.sentences.len())].clone();
            let boundary = rng.gen_range(0..=para.len());
            para.insert(boundary, sentence);
            stats.paragraphs_expanded += 1;
        }
    }

    if !bank.sentences.is_empty() {
        for (p, para) in paragraphs.iter_mut().enumerate() {
            if replaced[p] {
                continue;
            }
            for sentence in para.iter_mut() {
                stats.sentences_considered += 1;
                if rng.gen::<f64>() < 1.0 - overlap {
                    *sentence = bank.sentences[rng.gen_range(0..bank.sentences.len())].clone();
                    stats.sentences_replaced += 1;
                }
            }
        }
    }

    (Document::from_surfaces(paragraphs), stats)
}
