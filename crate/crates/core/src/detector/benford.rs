//! Benford conformance of a document's numbers. Each standalone number
//! contributes log10(1 + 1/d) for its first significant digit d; the mean
//! is high (near 0.301) when leading digits skew small, as honest financial
//! figures do, and low (near 0.046) when they skew large. Higher is LESS
//! suspicious; the combiner negates it.

use crate::text::{Document, TokenClass};

/// Mean first-digit Benford weight over the document's NUMBER tokens
/// (dates excluded). Numbers with no significant digit are skipped; a
/// document without scorable numbers returns None (not applicable).
pub fn benford_doc_score(doc: &Document) -> Option<f64> {
    let mut sum = 0.0;
    let mut count = 0usize;
    for token in doc.tokens() {
        if token.class != TokenClass::Number {
            continue;
        }
        let Some(d) = first_significant_digit(&token.surface) else {
            continue;
        };
        sum += (1.0 + 1.0 / d as f64).log10();
        count += 1;
    }
    (count > 0).then(|| sum / count as f64)
}

fn first_significant_digit(surface: &str) -> Option<u32> {
    surface
        .chars()
        .filter_map(|c| c.to_digit(10))
        .find(|&d| d != 0)
}
