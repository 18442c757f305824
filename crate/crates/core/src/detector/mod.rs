//! The red-team side: six per-document suspicion signals and their
//! combination into a most-to-least-suspicious ranking over a corpus of
//! one real document hiding among fakes.

mod benford;
mod newword;
mod ngram;
mod svd;
mod timestamp;
mod zipf;

pub use benford::benford_doc_score;
pub use newword::{bump_flag, fit_digamma, newword_curve, DigammaFit};
pub use ngram::{ngram_doc_score, pair_suspicion, LOW_FREQ_THRESHOLD};
pub use svd::{build_matrix, svd_distance, svd_embed, DocWordMatrix, Embedding};
pub use timestamp::timestamp_dev;
pub use zipf::{divergence_of_counts, zipf_divergence};

use std::io;
use std::path::Path;

use crate::lexicon::{FrequencySource, Warnings};
use crate::par;
use crate::text::{tokenize, Document};
use crate::{Error, Result};

/// One document to be scored: its id (usually the file name), parsed text,
/// and modification time in seconds when it lives on disk.
pub struct CorpusDoc {
    pub id: String,
    pub doc: Document,
    pub mtime: Option<f64>,
}

/// Relative influence of each detector in the combined score. The bump
/// flag defaults to zero weight: it is experimental and unreliable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorWeights {
    pub ngram: f64,
    pub zipf: f64,
    pub benford: f64,
    pub timestamp: f64,
    pub svd: f64,
    pub bump: f64,
}

impl Default for DetectorWeights {
    fn default() -> Self {
        DetectorWeights { ngram: 1.0, zipf: 1.0, benford: 1.0, timestamp: 1.0, svd: 1.0, bump: 0.0 }
    }
}

impl DetectorWeights {
    pub fn validate(&self) -> Result<()> {
        let all = [self.ngram, self.zipf, self.benford, self.timestamp, self.svd, self.bump];
        if all.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidSpec("detector weights must be finite and >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SuspicionReport {
    pub doc_id: String,
    pub ngram_score: f64,
    pub newword_curve: Vec<(usize, usize)>,
    pub bump_flag: bool,
    pub zipf_divergence: Option<f64>,
    pub benford_score: Option<f64>,
    pub timestamp_dev: Option<f64>,
    pub svd_distance: Option<f64>,
    pub combined: f64,
    /// 1 = most suspicious.
    pub rank: usize,
}

impl SuspicionReport {
    fn new(doc_id: &str) -> SuspicionReport {
        SuspicionReport {
            doc_id: doc_id.to_string(),
            ngram_score: 0.0,
            newword_curve: Vec::new(),
            bump_flag: false,
            zipf_divergence: None,
            benford_score: None,
            timestamp_dev: None,
            svd_distance: None,
            combined: 0.0,
            rank: 0,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ScoreOptions {
    pub weights: DetectorWeights,
    pub svd_rank: usize,
}

impl Default for ScoreOptions {
    fn default() -> Self {
        ScoreOptions { weights: DetectorWeights::default(), svd_rank: 3 }
    }
}

/// Scores every document and returns reports ranked most suspicious first.
/// Per-document signals run in parallel; the embedding and the timestamp
/// deviations are corpus-wide phases.
pub fn score_corpus(
    corpus: &[CorpusDoc],
    freqs: &(impl FrequencySource + Sync),
    opts: &ScoreOptions,
    warnings: &Warnings,
) -> Vec<SuspicionReport> {
    let mut reports: Vec<SuspicionReport> = par::map_indexed(corpus, |_, cd| {
        let mut report = SuspicionReport::new(&cd.id);
        report.ngram_score = ngram::ngram_doc_score(&cd.doc, freqs);
        report.newword_curve = newword::newword_curve(&cd.doc);
        report.bump_flag = newword::bump_flag(&report.newword_curve);
        report.zipf_divergence = zipf::zipf_divergence(&cd.doc);
        report.benford_score = benford::benford_doc_score(&cd.doc);
        report
    });

    let timed: Vec<usize> =
        (0..corpus.len()).filter(|&i| corpus[i].mtime.is_some()).collect();
    if !timed.is_empty() {
        let mtimes: Vec<f64> = timed.iter().map(|&i| corpus[i].mtime.unwrap()).collect();
        for (&i, dev) in timed.iter().zip(timestamp::timestamp_dev(&mtimes)) {
            reports[i].timestamp_dev = Some(dev);
        }
    }

    let worded: Vec<usize> =
        (0..corpus.len()).filter(|&i| corpus[i].doc.word_tokens().next().is_some()).collect();
    if worded.len() >= 2 {
        let docs: Vec<&Document> = worded.iter().map(|&i| &corpus[i].doc).collect();
        match svd::build_matrix(&docs) {
            Ok(matrix) => {
                let embedding = svd::svd_embed(&matrix, opts.svd_rank);
                for (&i, dist) in worded.iter().zip(svd::svd_distance(&embedding.coords)) {
                    reports[i].svd_distance = Some(dist);
                }
            }
            Err(e) => warnings.push(format!("embedding skipped: {e}")),
        }
    } else if !corpus.is_empty() {
        warnings.push("embedding skipped: fewer than two documents with words".to_string());
    }

    combine(reports, &opts.weights, warnings)
}

/// Embedding coordinates for plotting: one (doc id, [x, y, z]) row per
/// document that has words.
pub fn embed_corpus(corpus: &[CorpusDoc], k: usize) -> Result<Vec<(String, Vec<f64>)>> {
    let worded: Vec<usize> =
        (0..corpus.len()).filter(|&i| corpus[i].doc.word_tokens().next().is_some()).collect();
    let docs: Vec<&Document> = worded.iter().map(|&i| &corpus[i].doc).collect();
    let matrix = svd::build_matrix(&docs)?;
    let embedding = svd::svd_embed(&matrix, k);
    Ok(worded
        .iter()
        .enumerate()
        .map(|(row, &i)| {
            let coords: Vec<f64> =
                (0..embedding.coords.ncols()).map(|j| embedding.coords[(row, j)]).collect();
            (corpus[i].id.clone(), coords)
        })
        .collect())
}

/// Z-normalizes each applicable sub-score across the corpus (the Benford
/// score is negated first so higher always means more suspicious), then
/// combines them as a weighted mean and ranks descending, ties broken by
/// ascending document id. Ranks are 1-based.
pub fn combine(
    mut reports: Vec<SuspicionReport>,
    weights: &DetectorWeights,
    warnings: &Warnings,
) -> Vec<SuspicionReport> {
    let columns: [(f64, Vec<Option<f64>>); 6] = [
        (weights.ngram, reports.iter().map(|r| Some(r.ngram_score)).collect()),
        (weights.zipf, reports.iter().map(|r| r.zipf_divergence).collect()),
        (weights.benford, reports.iter().map(|r| r.benford_score.map(|b| -b)).collect()),
        (weights.timestamp, reports.iter().map(|r| r.timestamp_dev).collect()),
        (weights.svd, reports.iter().map(|r| r.svd_distance).collect()),
        (weights.bump, reports.iter().map(|r| Some(r.bump_flag as u8 as f64)).collect()),
    ];
    let normalized: Vec<(f64, Vec<Option<f64>>)> = columns
        .into_iter()
        .map(|(weight, col)| (weight, z_normalize(col)))
        .collect();

    for (i, report) in reports.iter_mut().enumerate() {
        let mut sum = 0.0;
        let mut weight_sum = 0.0;
        for (weight, col) in &normalized {
            if *weight > 0.0 {
                if let Some(z) = col[i] {
                    sum += weight * z;
                    weight_sum += weight;
                }
            }
        }
        report.combined = if weight_sum > 0.0 {
            sum / weight_sum
        } else {
            warnings.push(format!("no applicable detector for {:?}; combined set to 0", report.doc_id));
            0.0
        };
    }

    reports.sort_by(|a, b| {
        b.combined
            .partial_cmp(&a.combined)
            .expect("combined scores are finite")
            .then_with(|| a.doc_id.cmp(&b.doc_id))
    });
    for (i, report) in reports.iter_mut().enumerate() {
        report.rank = i + 1;
    }
    reports
}

/// (v - mean) / std over the applicable entries; a column with zero spread
/// normalizes to zeros so it cannot tip the ranking. The spread test uses a
/// relative floor: identical documents produce coordinate noise around
/// 1e-17, and dividing by such a std would amplify garbage into the score.
fn z_normalize(col: Vec<Option<f64>>) -> Vec<Option<f64>> {
    let present: Vec<f64> = col.iter().flatten().copied().collect();
    if present.is_empty() {
        return col;
    }
    let mean = present.iter().sum::<f64>() / present.len() as f64;
    let var = present.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / present.len() as f64;
    let std = var.sqrt();
    let floor = 1e-12 * (1.0 + mean.abs());
    col.into_iter()
        .map(|v| v.map(|v| if std <= floor { 0.0 } else { (v - mean) / std }))
        .collect()
}

/// Reads every `*.txt` file in a directory (sorted by name) as one corpus
/// document, with its mtime.
pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusDoc>> {
    let mut paths: Vec<std::path::PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().is_some_and(|e| e == "txt")
                && p.file_name()
                    .and_then(|n| n.to_str())
                    .is_some_and(|n| !n.starts_with('.'))
        })
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let text = std::fs::read_to_string(&path)?;
            let mtime = std::fs::metadata(&path)?
                .modified()?
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs_f64())
                .unwrap_or(0.0);
            Ok(CorpusDoc {
                id: path.file_name().unwrap().to_string_lossy().into_owned(),
                doc: tokenize(&text),
                mtime: Some(mtime),
            })
        })
        .collect()
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |v| format!("{v:.6}"))
}

/// CSV report: `doc,ngram,zipf,benford,timestamp_dev,svd_distance,combined,rank`.
pub fn write_report_csv<W: io::Write>(reports: &[SuspicionReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["doc", "ngram", "zipf", "benford", "timestamp_dev", "svd_distance", "combined", "rank"])
        .map_err(csv_err)?;
    for r in reports {
        w.write_record([
            r.doc_id.clone(),
            format!("{:.6}", r.ngram_score),
            fmt_opt(r.zipf_divergence),
            fmt_opt(r.benford_score),
            fmt_opt(r.timestamp_dev),
            fmt_opt(r.svd_distance),
            format!("{:.6}", r.combined),
            r.rank.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// CSV vocabulary-growth curve for one document: `n,unique`.
pub fn write_curve_csv<W: io::Write>(curve: &[(usize, usize)], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "unique"]).map_err(csv_err)?;
    for &(n, u) in curve {
        w.write_record([n.to_string(), u.to_string()]).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// CSV embedding: `doc,x,y,z`, zero-padded when the corpus supports fewer
/// than three directions.
pub fn write_embedding_csv<W: io::Write>(rows: &[(String, Vec<f64>)], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["doc", "x", "y", "z"]).map_err(csv_err)?;
    for (id, coords) in rows {
        let at = |i: usize| format!("{:.6}", coords.get(i).copied().unwrap_or(0.0));
        w.write_record([id.clone(), at(0), at(1), at(2)]).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidSpec(format!("csv write failed: {e}"))
}
