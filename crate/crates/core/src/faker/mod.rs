//! Fake-document generation. Each fake runs a deterministic pipeline seeded
//! by (master_seed, index): block substitution from a user bank, then
//! overlap-controlled word substitution, Benford number replacement, biased
//! date perturbation, and a final grammar repair pass.

mod blocks;
mod dates;
mod nouns;
mod numbers;

pub use blocks::{substitute_blocks, substitute_blocks_stats, BlockStats};
pub use dates::{perturb_date, perturb_dates, DateBias};
pub use nouns::{substitute_nouns, substitute_nouns_stats, NounStats, GRAMMAR_RETRIES};
pub use numbers::{benford_number, replace_numbers};

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::lexicon::{
    GrammarChecker, Relation, ReplacementCache, ReplacementProvider, Warnings,
};
use crate::text::{tokenize, Document};
use crate::{par, Error, Result};

/// Which word classes the substitution pass may touch. The default follows
/// the narrow reading (nouns only); `OpenClass` also covers verbs,
/// adjectives and adverbs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SubstitutePos {
    #[default]
    Nouns,
    OpenClass,
}

impl SubstitutePos {
    pub fn parse(s: &str) -> Option<SubstitutePos> {
        match s {
            "nouns" => Some(SubstitutePos::Nouns),
            "open_class" => Some(SubstitutePos::OpenClass),
            _ => None,
        }
    }
}

/// Relative draw weights per candidate relation. Equal weights make the
/// draw uniform over the merged candidate set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationWeights {
    pub synonym: f64,
    pub antonym: f64,
    pub associated: f64,
}

impl Default for RelationWeights {
    fn default() -> RelationWeights {
        RelationWeights { synonym: 1.0, antonym: 1.0, associated: 1.0 }
    }
}

impl RelationWeights {
    pub fn weight(&self, relation: Relation) -> f64 {
        match relation {
            Relation::Synonym => self.synonym,
            Relation::Antonym => self.antonym,
            Relation::Associated => self.associated,
        }
    }
}

/// Substitution material: whole paragraphs and single sentences, stored as
/// token surfaces.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Bank {
    pub paragraphs: Vec<Vec<Vec<String>>>,
    pub sentences: Vec<Vec<String>>,
}

impl Bank {
    pub fn empty() -> Bank {
        Bank::default()
    }

    pub fn is_empty(&self) -> bool {
        self.paragraphs.is_empty() && self.sentences.is_empty()
    }

    /// Bank file format: plain text, paragraphs separated by blank lines,
    /// lines prefixed `S:` are sentence-bank entries.
    pub fn parse(text: &str) -> Result<Bank> {
        let mut sentence_lines = Vec::new();
        let mut paragraph_text = String::new();
        for line in text.lines() {
            match line.strip_prefix("S:") {
                Some(rest) => sentence_lines.push(rest.trim().to_string()),
                None => {
                    paragraph_text.push_str(line);
                    paragraph_text.push('\n');
                }
            }
        }
        let paragraphs = tokenize(&paragraph_text).to_surfaces();
        let mut sentences = Vec::new();
        for line in &sentence_lines {
            let parsed: Vec<Vec<String>> =
                tokenize(line).to_surfaces().into_iter().flatten().collect();
            if parsed.is_empty() {
                return Err(Error::InvalidSpec(format!(
                    "empty sentence-bank entry {line:?}"
                )));
            }
            sentences.extend(parsed);
        }
        Ok(Bank { paragraphs, sentences })
    }

    pub fn load(path: &std::path::Path) -> Result<Bank> {
        Bank::parse(&std::fs::read_to_string(path)?)
    }
}

#[derive(Debug, Clone)]
pub struct FakeSpec {
    /// Target fraction of the real document retained, in [0, 1].
    pub overlap: f64,
    pub n_fakes: usize,
    pub master_seed: u64,
    pub bank: Bank,
    pub date_bias: DateBias,
    pub substitute_pos: SubstitutePos,
    pub relation_weights: RelationWeights,
}

impl FakeSpec {
    pub fn new(n_fakes: usize, master_seed: u64) -> FakeSpec {
        FakeSpec {
            overlap: 0.7,
            n_fakes,
            master_seed,
            bank: Bank::empty(),
            date_bias: DateBias::default(),
            substitute_pos: SubstitutePos::default(),
            relation_weights: RelationWeights::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.overlap) {
            return Err(Error::InvalidSpec(format!(
                "overlap must lie in [0, 1], got {}",
                self.overlap
            )));
        }
        if self.n_fakes == 0 {
            return Err(Error::InvalidSpec("n_fakes must be at least 1".into()));
        }
        if self.date_bias.mean_days >= 0.0 {
            return Err(Error::InvalidSpec(format!(
                "date shift mean must be negative, got {}",
                self.date_bias.mean_days
            )));
        }
        if self.date_bias.std_days < 0.0 {
            return Err(Error::InvalidSpec("date shift deviation must be >= 0".into()));
        }
        let w = &self.relation_weights;
        if w.synonym < 0.0 || w.antonym < 0.0 || w.associated < 0.0 {
            return Err(Error::InvalidSpec("relation weights must be >= 0".into()));
        }
        if w.synonym + w.antonym + w.associated == 0.0 {
            return Err(Error::InvalidSpec("at least one relation weight must be > 0".into()));
        }
        Ok(())
    }
}

/// Shared lexical services for a generation run. Workers run in parallel;
/// the cache serializes its own writes.
pub struct FakerContext<'a> {
    pub cache: &'a ReplacementCache,
    pub provider: &'a dyn ReplacementProvider,
    pub checker: &'a dyn GrammarChecker,
    pub warnings: &'a Warnings,
}

/// Produce `spec.n_fakes` fakes of `real`. Fake i depends only on
/// (master_seed, i) and the inputs, so runs are reproducible and the result
/// order is by index regardless of scheduling.
pub fn generate_fakes(real: &Document, spec: &FakeSpec, ctx: &FakerContext) -> Result<Vec<Document>> {
    if real.is_empty() {
        return Err(Error::EmptyDocument);
    }
    spec.validate()?;
    Ok(par::map_range(spec.n_fakes, |i| {
        let mut rng = ChaCha12Rng::from_seed(derive_seed(spec.master_seed, i as u64));
        let doc = substitute_blocks(real, &spec.bank, spec.overlap, &mut rng);
        let (doc, _) = substitute_nouns_stats(
            &doc,
            spec.overlap,
            spec.substitute_pos,
            spec.relation_weights,
            ctx.cache,
            ctx.provider,
            ctx.checker,
            &mut rng,
        );
        let doc = replace_numbers(&doc, &mut rng);
        let doc = perturb_dates(&doc, &spec.date_bias, &mut rng, ctx.warnings);
        grammar_repair(&doc, ctx.checker)
    }))
}

/// Independent 32-byte stream seed per fake index.
fn derive_seed(master_seed: u64, index: u64) -> [u8; 32] {
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&master_seed.to_le_bytes());
    seed[8..16].copy_from_slice(&index.to_le_bytes());
    seed
}

/// Final pass over every sentence. The only violation that can be repaired
/// mechanically is a duplicate adjacent token (a substitution echoing its
/// neighbor); the duplicate is dropped. Other verdicts are left standing.
fn grammar_repair(doc: &Document, checker: &dyn GrammarChecker) -> Document {
    let mut paragraphs = Vec::with_capacity(doc.paragraphs.len());
    for para in &doc.paragraphs {
        let mut sentences = Vec::with_capacity(para.sentences.len());
        for sent in &para.sentences {
            let mut tokens = sent.tokens.clone();
            while !checker.check(&tokens).is_ok() {
                let before = tokens.len();
                tokens.dedup_by(|current, previous| current.key() == previous.key());
                if tokens.len() == before {
                    break;
                }
            }
            sentences.push(tokens.into_iter().map(|t| t.surface).collect::<Vec<_>>());
        }
        paragraphs.push(sentences);
    }
    Document::from_surfaces(paragraphs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{LocalGrammar, LocalReplacements};
    use crate::text::TokenClass;

    const REAL: &str = "The harbor authority met on 1894-06-14. Tonnage reached 912.\n\n\
                        The clerks posted totals of 4,120 pounds. Receipts declined.";

    fn context<'a>(cache: &'a ReplacementCache, warnings: &'a Warnings) -> FakerContext<'a> {
        FakerContext {
            cache,
            provider: LocalReplacements::bundled(),
            checker: &LocalGrammar,
            warnings,
        }
    }

    #[test]
    fn identical_inputs_give_byte_identical_fakes() {
        let real = tokenize(REAL);
        let spec = FakeSpec::new(4, 99);
        let cache = ReplacementCache::in_memory();
        let warnings = Warnings::default();
        let ctx = context(&cache, &warnings);
        let a: Vec<String> =
            generate_fakes(&real, &spec, &ctx).unwrap().iter().map(|d| d.source.clone()).collect();
        let b: Vec<String> =
            generate_fakes(&real, &spec, &ctx).unwrap().iter().map(|d| d.source.clone()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn different_indices_give_distinct_fakes() {
        let real = tokenize(REAL);
        let spec = FakeSpec::new(6, 7);
        let cache = ReplacementCache::in_memory();
        let warnings = Warnings::default();
        let fakes = generate_fakes(&real, &spec, &context(&cache, &warnings)).unwrap();
        for i in 0..fakes.len() {
            for j in i + 1..fakes.len() {
                assert_ne!(fakes[i].source, fakes[j].source, "fakes {i} and {j} collide");
            }
        }
    }

    #[test]
    fn full_overlap_empty_bank_keeps_every_word() {
        let real = tokenize(REAL);
        let mut spec = FakeSpec::new(3, 11);
        spec.overlap = 1.0;
        let cache = ReplacementCache::in_memory();
        let warnings = Warnings::default();
        let fakes = generate_fakes(&real, &spec, &context(&cache, &warnings)).unwrap();
        let real_words: Vec<&str> = real.word_tokens().map(|t| t.surface.as_str()).collect();
        for fake in &fakes {
            let fake_words: Vec<&str> = fake.word_tokens().map(|t| t.surface.as_str()).collect();
            assert_eq!(fake_words, real_words);
            // Numbers and dates still move.
            assert_ne!(fake.source, real.source);
        }
    }

    #[test]
    fn empty_document_is_rejected() {
        let real = tokenize("");
        let spec = FakeSpec::new(1, 0);
        let cache = ReplacementCache::in_memory();
        let warnings = Warnings::default();
        let err = generate_fakes(&real, &spec, &context(&cache, &warnings)).unwrap_err();
        assert!(matches!(err, Error::EmptyDocument));
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let mut spec = FakeSpec::new(1, 0);
        spec.overlap = 1.2;
        assert!(spec.validate().is_err());

        let mut spec = FakeSpec::new(0, 0);
        assert!(spec.validate().is_err());
        spec.n_fakes = 1;
        spec.date_bias.mean_days = 3.0;
        assert!(spec.validate().is_err());

        let mut spec = FakeSpec::new(1, 0);
        spec.relation_weights = RelationWeights { synonym: 0.0, antonym: 0.0, associated: 0.0 };
        assert!(spec.validate().is_err());
    }

    #[test]
    fn token_classes_survive_the_pipeline() {
        let real = tokenize(REAL);
        let spec = FakeSpec::new(5, 3);
        let cache = ReplacementCache::in_memory();
        let warnings = Warnings::default();
        let fakes = generate_fakes(&real, &spec, &context(&cache, &warnings)).unwrap();
        let count = |doc: &Document, class: TokenClass| {
            doc.tokens().filter(|t| t.class == class).count()
        };
        for fake in &fakes {
            // No bank, so the shape is the real document's shape.
            assert_eq!(fake.paragraphs.len(), real.paragraphs.len());
            assert_eq!(count(fake, TokenClass::Number), count(&real, TokenClass::Number));
            assert_eq!(count(fake, TokenClass::Date), count(&real, TokenClass::Date));
        }
    }

    #[test]
    fn paper_style_paragraph_keeps_shape_and_moves_numbers() {
        let real = tokenize(
            "Current theories focus on personal characteristics to explain \
             wrong-doing and how someone can intentionally harm others. In a \
             survey, professionals such as doctors, psychologist and economists \
             were asked to predict the cost of 80 hours of treatment.",
        );
        let spec = FakeSpec::new(1, 5);
        let cache = ReplacementCache::in_memory();
        let warnings = Warnings::default();
        let fake = generate_fakes(&real, &spec, &context(&cache, &warnings))
            .unwrap()
            .remove(0);
        assert_eq!(fake.paragraphs.len(), 1);
        assert_eq!(fake.sentences().count(), 2);
        let number = fake.tokens().find(|t| t.class == TokenClass::Number).unwrap();
        assert_eq!(number.surface.len(), 2);
    }

    #[test]
    fn bank_parsing_splits_paragraphs_and_sentence_lines() {
        let bank = Bank::parse(
            "First paragraph here. It has two sentences.\n\n\
             Second paragraph.\n\
             S: A bank sentence.\n\
             S: Another one.\n",
        )
        .unwrap();
        assert_eq!(bank.paragraphs.len(), 2);
        assert_eq!(bank.paragraphs[0].len(), 2);
        assert_eq!(bank.sentences.len(), 2);

        assert!(Bank::parse("S:   \n").is_err());
        assert!(Bank::parse("").unwrap().is_empty());
    }

    #[test]
    fn grammar_repair_drops_duplicate_neighbors() {
        let doc = tokenize("The the cost rose.");
        let repaired = grammar_repair(&doc, &LocalGrammar);
        assert_eq!(repaired.source, "The cost rose.");
    }
}
