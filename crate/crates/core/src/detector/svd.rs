//! Low-rank document embedding. Each document becomes a row of word rates;
//! a truncated SVD projects the corpus into k dimensions where machine
//! generated variations cluster and the odd document out sits away from
//! the centroid.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;

use crate::text::Document;
use crate::{Error, Result};

/// Row-normalized document-by-word rate matrix over the corpus vocabulary.
pub struct DocWordMatrix {
    pub vocab: Vec<String>,
    /// docs x vocab; every row sums to 1.
    pub rates: DMatrix<f64>,
}

/// Builds the rate matrix. Every document must contribute at least one
/// word, and an embedding needs at least two documents.
pub fn build_matrix(docs: &[&Document]) -> Result<DocWordMatrix> {
    if docs.len() < 2 {
        return Err(Error::CorpusTooSmall("need at least two documents to embed".into()));
    }
    let mut vocab_set: BTreeSet<String> = BTreeSet::new();
    let mut counts: Vec<BTreeMap<String, f64>> = Vec::with_capacity(docs.len());
    for doc in docs {
        let mut c: BTreeMap<String, f64> = BTreeMap::new();
        for token in doc.word_tokens() {
            *c.entry(token.key()).or_insert(0.0) += 1.0;
        }
        if c.is_empty() {
            return Err(Error::CorpusTooSmall("a document has no words to embed".into()));
        }
        vocab_set.extend(c.keys().cloned());
        counts.push(c);
    }
    let vocab: Vec<String> = vocab_set.into_iter().collect();
    let mut rates = DMatrix::zeros(docs.len(), vocab.len());
    for (i, c) in counts.iter().enumerate() {
        let total: f64 = c.values().sum();
        for (j, word) in vocab.iter().enumerate() {
            if let Some(n) = c.get(word) {
                rates[(i, j)] = n / total;
            }
        }
    }
    Ok(DocWordMatrix { vocab, rates })
}

pub struct Embedding {
    /// docs x k coordinates: rows of U scaled by the singular values, so
    /// distances respect the variance each axis carries.
    pub coords: DMatrix<f64>,
    /// Non-negative, non-increasing, length k.
    pub singular_values: Vec<f64>,
}

/// Truncated SVD embedding of rank at most k (default 3 at the call sites).
pub fn svd_embed(matrix: &DocWordMatrix, k: usize) -> Embedding {
    let svd = matrix.rates.clone().svd(true, true);
    let u = svd.u.expect("u requested");
    let s = svd.singular_values;
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&a, &b| s[b].partial_cmp(&s[a]).expect("finite singular values"));
    order.truncate(k.min(s.len()));
    let mut coords = DMatrix::zeros(u.nrows(), order.len());
    for (col, &idx) in order.iter().enumerate() {
        for row in 0..u.nrows() {
            coords[(row, col)] = u[(row, idx)] * s[idx];
        }
    }
    Embedding { coords, singular_values: order.iter().map(|&i| s[i]).collect() }
}

/// Euclidean distance of each document's point from the corpus centroid.
pub fn svd_distance(coords: &DMatrix<f64>) -> Vec<f64> {
    let n = coords.nrows();
    if n == 0 {
        return Vec::new();
    }
    let centroid: Vec<f64> =
        (0..coords.ncols()).map(|j| coords.column(j).sum() / n as f64).collect();
    (0..n)
        .map(|i| {
            (0..coords.ncols())
                .map(|j| {
                    let d = coords[(i, j)] - centroid[j];
                    d * d
                })
                .sum::<f64>()
                .sqrt()
        })
        .collect()
}
