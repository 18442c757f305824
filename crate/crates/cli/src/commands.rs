//! The five commands. Each returns a `CliError` that main maps to an exit
//! code: validation problems exit 2, authentication and IO problems exit 3.

use std::fmt;
use std::fs;
use std::path::Path;

use chaff_core::detector::{
    embed_corpus, load_corpus, newword_curve, score_corpus, write_curve_csv, write_embedding_csv,
    write_report_csv, CorpusDoc, ScoreOptions, SuspicionReport,
};
use chaff_core::faker::{generate_fakes, Bank, FakeSpec, FakerContext};
use chaff_core::lexicon::{
    FrequencyTable, GrammarChecker, LocalGrammar, LocalReplacements, RemoteFrequency,
    RemoteGrammar, RemoteReplacements, ReplacementCache, ReplacementProvider, Warnings,
};
use chaff_core::text::{detokenize, tokenize};
use chaff_core::vault::{create_vault, Share, VaultSession};
use chaff_core::Error;

use crate::config::{ConfigError, Settings};
use crate::svg;

#[derive(Debug)]
pub enum CliError {
    /// Caller mistake: bad flag, bad config, bad argument. Exit 2.
    Config(String),
    /// Library failure; exit code depends on the variant. See `exit_code`.
    Core(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Core(Error::Io(e))
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> CliError {
        CliError::Config(e.0)
    }
}

impl CliError {
    /// 2 for anything the caller can fix by changing arguments or inputs;
    /// 3 for authentication failures and filesystem or service trouble.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(e) => match e {
                Error::Io(_)
                | Error::Json(_)
                | Error::AuthenticationFailed
                | Error::VaultLocked(_)
                | Error::MissingFile(_)
                | Error::Manifest(_)
                | Error::Provider(_) => 3,
                _ => 2,
            },
        }
    }
}

fn parse_share(text: &str) -> Result<Share, CliError> {
    text.parse::<Share>().map_err(CliError::from)
}

/// Generate fakes of `real_path`, store everything in a fresh vault, and
/// print the user share. The share goes to stdout alone so scripts can
/// capture it; it exists nowhere else.
pub fn generate(real_path: &Path, settings: &Settings) -> Result<(), CliError> {
    let raw = fs::read_to_string(real_path)?;
    let doc = tokenize(&raw);

    let bank = match &settings.bank {
        Some(path) => Bank::load(path)?,
        None => Bank::empty(),
    };
    let spec = FakeSpec {
        overlap: settings.overlap,
        n_fakes: settings.fakes,
        master_seed: settings.seed,
        bank,
        date_bias: settings.date_bias,
        substitute_pos: settings.substitute_pos,
        relation_weights: settings.relation_weights,
    };

    let cache = match &settings.cache {
        Some(path) => ReplacementCache::open(path)?,
        None => ReplacementCache::in_memory(),
    };
    let remote_replacements = match (&settings.provider_thesaurus, &settings.provider_association)
    {
        (Some(t), Some(a)) => Some(RemoteReplacements::new(t, a)),
        _ => None,
    };
    let provider: &dyn ReplacementProvider = match &remote_replacements {
        Some(r) => r,
        None => LocalReplacements::bundled(),
    };
    let local_grammar = LocalGrammar;
    let remote_grammar = settings.provider_grammar.as_deref().map(RemoteGrammar::new);
    let checker: &dyn GrammarChecker = match &remote_grammar {
        Some(r) => r,
        None => &local_grammar,
    };

    let warnings = Warnings::default();
    let ctx = FakerContext { cache: &cache, provider, checker, warnings: &warnings };
    let fakes = generate_fakes(&doc, &spec, &ctx)?;
    let fake_texts: Vec<String> = fakes.iter().map(detokenize).collect();

    let out = settings.out_dir_or("vault");
    let (_, share) = create_vault(&out, &raw, &fake_texts, settings.prime, &mut rand::thread_rng())?;

    for w in warnings.snapshot() {
        log::warn!("{w}");
    }
    for w in cache.warnings() {
        log::warn!("{w}");
    }
    if let Some(r) = &remote_grammar {
        for w in r.warnings() {
            log::warn!("{w}");
        }
    }
    log::info!(
        "vault {} holds {} fakes and the real document under shuffled names",
        out.display(),
        fake_texts.len()
    );
    println!("{share}");
    Ok(())
}

/// Print whatever document the share points at. A wrong-but-well-formed
/// share opens some fake with the same exit code as the real thing.
pub fn open(vault_dir: &Path, share_text: &str) -> Result<(), CliError> {
    let share = parse_share(share_text)?;
    let session = VaultSession::open_read(vault_dir, share)?;
    print!("{}", session.content());
    Ok(())
}

/// Replace the vault's real content with the given file, re-randomizing
/// names and the system share. Masking edits run for the session's life.
pub fn save(vault_dir: &Path, share_text: &str, content_path: &Path, settings: &Settings) -> Result<(), CliError> {
    let share = parse_share(share_text)?;
    let new_content = fs::read_to_string(content_path)?;
    let mut session = VaultSession::open_write(vault_dir, share, settings.masking)?;
    session.save(&new_content, &mut rand::thread_rng())?;
    log::info!("saved {} bytes into {}", new_content.len(), vault_dir.display());
    Ok(())
}

/// Score every document and write the full report set: report.csv, one
/// vocabulary-growth CSV per document, and embedding.csv. Prints the top 5.
pub fn rank(corpus_dir: &Path, settings: &Settings) -> Result<(), CliError> {
    let corpus = load_corpus(corpus_dir)?;
    if corpus.len() < 2 {
        return Err(Error::CorpusTooSmall(format!(
            "{} holds {} document(s); ranking needs at least 2",
            corpus_dir.display(),
            corpus.len()
        ))
        .into());
    }

    let weights = settings.resolve_weights();
    weights.validate()?;
    let opts = ScoreOptions { weights, svd_rank: settings.svd_rank };
    let warnings = Warnings::default();
    let reports = match &settings.provider_frequency {
        Some(url) => {
            let remote = RemoteFrequency::new(url);
            let reports = score_corpus(&corpus, &remote, &opts, &warnings);
            for w in remote.warnings() {
                warnings.push(w);
            }
            reports
        }
        None => score_corpus(&corpus, FrequencyTable::bundled(), &opts, &warnings),
    };

    let out = settings.out_dir_or("report");
    fs::create_dir_all(&out)?;
    write_report_csv(&reports, fs::File::create(out.join("report.csv"))?)?;

    let curve_dir = out.join("curves");
    fs::create_dir_all(&curve_dir)?;
    for report in &reports {
        let path = curve_dir.join(format!("{}.csv", sanitize_stem(&report.doc_id)));
        write_curve_csv(&report.newword_curve, fs::File::create(path)?)?;
    }

    match embed_corpus(&corpus, settings.svd_rank) {
        Ok(rows) => write_embedding_csv(&rows, fs::File::create(out.join("embedding.csv"))?)?,
        Err(e) => warnings.push(format!("embedding.csv skipped: {e}")),
    }

    for w in warnings.snapshot() {
        log::warn!("{w}");
    }
    log::info!("full report in {}", out.display());
    print_summary(&reports);
    Ok(())
}

/// Render the vocabulary growth curves and the embedding scatter as SVG.
pub fn plot(corpus_dir: &Path, settings: &Settings) -> Result<(), CliError> {
    let corpus = load_corpus(corpus_dir)?;
    if corpus.is_empty() {
        return Err(Error::CorpusTooSmall(format!(
            "{} holds no documents",
            corpus_dir.display()
        ))
        .into());
    }
    let out = settings.out_dir_or("report");
    fs::create_dir_all(&out)?;

    let series: Vec<(String, Vec<(f64, f64)>)> = corpus
        .iter()
        .map(|cd| {
            let pts = newword_curve(&cd.doc)
                .into_iter()
                .map(|(n, u)| (n as f64, u as f64))
                .collect();
            (cd.id.clone(), pts)
        })
        .collect();
    let curves_path = out.join("curves.svg");
    fs::write(&curves_path, svg::line_chart("vocabulary growth (tokens vs distinct words)", &series))?;

    match embedding_points(&corpus, settings.svd_rank) {
        Ok(points) => {
            let path = out.join("embedding.svg");
            fs::write(&path, svg::scatter("document embedding (first two axes)", &points))?;
            log::info!("wrote {} and {}", curves_path.display(), path.display());
        }
        Err(e) => {
            log::warn!("embedding.svg skipped: {e}");
            log::info!("wrote {}", curves_path.display());
        }
    }
    Ok(())
}

fn embedding_points(corpus: &[CorpusDoc], k: usize) -> Result<Vec<(String, f64, f64)>, Error> {
    let rows = embed_corpus(corpus, k.max(2))?;
    Ok(rows
        .into_iter()
        .map(|(id, coords)| {
            let x = coords.first().copied().unwrap_or(0.0);
            let y = coords.get(1).copied().unwrap_or(0.0);
            (id, x, y)
        })
        .collect())
}

/// Keep report file names portable: anything outside [A-Za-z0-9._-] becomes
/// an underscore, and a trailing .txt is dropped before .csv is appended.
fn sanitize_stem(id: &str) -> String {
    let cleaned: String = id
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || ".-_".contains(c) { c } else { '_' })
        .collect();
    cleaned.strip_suffix(".txt").unwrap_or(&cleaned).to_string()
}

fn print_summary(reports: &[SuspicionReport]) {
    println!("rank  combined    document");
    for report in reports.iter().take(5) {
        println!("{:>4}  {:>10.4}  {}", report.rank, report.combined, report.doc_id);
    }
}
