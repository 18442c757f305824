//! Biased date perturbation: shifts are drawn from a normal distribution
//! with negative mean, so fake dates land earlier than the real one on
//! average and the real date is not the midpoint of the fake cloud.

use chrono::Duration;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::lexicon::Warnings;
use crate::text::{format_date, parse_date, Document, TokenClass};

/// Day-shift distribution; the negative mean is what defeats
/// midpoint-style averaging over the fakes. `day_first` breaks the tie for
/// ambiguous slashed dates (3/5/2019) before the opposite reading is tried.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DateBias {
    pub mean_days: f64,
    pub std_days: f64,
    pub day_first: bool,
}

impl Default for DateBias {
    fn default() -> DateBias {
        DateBias { mean_days: -7.0, std_days: 10.0, day_first: false }
    }
}

/// Shift a DATE token surface, preserving its textual format. Calendar
/// validity holds by construction: the shift is whole days applied to a
/// parsed date. Returns None when the surface does not parse as a date.
pub fn perturb_date(surface: &str, bias: &DateBias, rng: &mut impl Rng) -> Option<String> {
    let parsed =
        parse_date(surface, bias.day_first).or_else(|| parse_date(surface, !bias.day_first))?;
    let normal = Normal::new(bias.mean_days, bias.std_days).ok()?;
    let shift = normal.sample(rng).round() as i64;
    // checked_add only fails at the far edges of the supported year range;
    // clamp by keeping the original date there.
    let shifted = parsed
        .date
        .checked_add_signed(Duration::days(shift))
        .unwrap_or(parsed.date);
    Some(format_date(shifted, parsed.format))
}

/// Perturb every DATE token in the document. Unparseable surfaces are left
/// unchanged with a warning (unreachable for tokenizer-produced documents,
/// which only class parseable dates as DATE).
pub fn perturb_dates(
    doc: &Document,
    bias: &DateBias,
    rng: &mut impl Rng,
    warnings: &Warnings,
) -> Document {
    let mut paragraphs = Vec::with_capacity(doc.paragraphs.len());
    for para in &doc.paragraphs {
        let mut sentences = Vec::with_capacity(para.sentences.len());
        for sent in &para.sentences {
            let surfaces: Vec<String> = sent
                .tokens
                .iter()
                .map(|t| {
                    if t.class != TokenClass::Date {
                        return t.surface.clone();
                    }
                    match perturb_date(&t.surface, bias, rng) {
                        Some(fake) => fake,
                        None => {
                            warnings.push(format!("unparseable date left unchanged: {:?}", t.surface));
                            t.surface.clone()
                        }
                    }
                })
                .collect();
            sentences.push(surfaces);
        }
        paragraphs.push(sentences);
    }
    Document::from_surfaces(paragraphs)
}
