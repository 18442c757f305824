//! Benford-distributed number replacement. Output numbers keep the digit
//! count, thousands separators and decimal point of the original; the
//! significant digits are redrawn so the corpus of fakes conforms to the
//! first-digit law and its positional generalizations.

use std::sync::OnceLock;

use rand::Rng;

use crate::text::{Document, TokenClass};

/// First-digit probabilities P(d) = log10(1 + 1/d) for d = 1..9, and the
/// generalized distributions for significant-digit positions 2..4:
/// P(digit d at position j) = sum of log10(1 + 1/(10k + d)) over every
/// (j-1)-digit prefix k. Positions past 4 are drawn uniformly.
fn tables() -> &'static ([f64; 9], [[f64; 10]; 3]) {
    static TABLES: OnceLock<([f64; 9], [[f64; 10]; 3])> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut first = [0.0; 9];
        for (i, slot) in first.iter_mut().enumerate() {
            *slot = (1.0 + 1.0 / (i + 1) as f64).log10();
        }
        let mut position = [[0.0; 10]; 3];
        for (idx, row) in position.iter_mut().enumerate() {
            let prefixes = 10u64.pow(idx as u32)..10u64.pow(idx as u32 + 1);
            for (d, slot) in row.iter_mut().enumerate() {
                *slot = prefixes
                    .clone()
                    .map(|k| (1.0 + 1.0 / ((10 * k + d as u64) as f64)).log10())
                    .sum();
            }
        }
        (first, position)
    })
}

fn draw(cumulative_over: &[f64], rng: &mut impl Rng) -> usize {
    let mut u: f64 = rng.gen();
    for (i, p) in cumulative_over.iter().enumerate() {
        if u < *p {
            return i;
        }
        u -= p;
    }
    cumulative_over.len() - 1
}

/// Redraw the digits of a NUMBER token surface. Leading zeros stay zeros, so
/// the first significant digit gets the first-digit draw and can never be 0;
/// an all-zero surface ("0", "0.00") is returned unchanged.
pub fn benford_number(original: &str, rng: &mut impl Rng) -> String {
    let (first, position) = tables();
    if !original.contains(|c: char| c.is_ascii_digit() && c != '0') {
        return original.to_string();
    }
    let mut out = String::with_capacity(original.len());
    let mut significant = 0usize;
    let mut seen_nonzero = false;
    for c in original.chars() {
        if !c.is_ascii_digit() {
            out.push(c);
            continue;
        }
        if !seen_nonzero && c == '0' {
            out.push('0');
            continue;
        }
        seen_nonzero = true;
        significant += 1;
        let digit = match significant {
            1 => draw(first, rng) + 1,
            2..=4 => draw(&position[significant - 2], rng),
            _ => rng.gen_range(0..10),
        };
        out.push(char::from(b'0' + digit as u8));
    }
    out
}

/// Replace every NUMBER token in the document (dates are a separate class
/// and untouched here).
pub fn replace_numbers(doc: &Document, rng: &mut impl Rng) -> Document {
    let mut paragraphs = Vec::with_capacity(doc.paragraphs.len());
    for para in &doc.paragraphs {
        let mut sentences = Vec::with_capacity(para.sentences.len());
        for sent in &para.sentences {
            let surfaces: Vec<String> = sent
                .tokens
                .iter()
                .map(|t| {
                    if t.class == TokenClass::Number {
                        benford_number(&t.surface, rng)
                    } else {
                        t.surface.clone()
                    }
                })
                .collect();
            sentences.push(surfaces);
        }
        paragraphs.push(sentences);
    }
    Document::from_surfaces(paragraphs)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    use super::*;

    fn rng() -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(0xBEEF)
    }

    #[test]
    fn first_digit_table_matches_the_law() {
        let (first, _) = tables();
        assert!((first.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((first[0] - 0.30103).abs() < 5e-6);
        assert!((first[8] - 0.045757).abs() < 5e-7);
    }

    #[test]
    fn second_digit_table_matches_published_constants() {
        // Standard second-digit Benford probabilities, to five decimals.
        let expected = [
            0.11968, 0.11389, 0.10882, 0.10433, 0.10031, 0.09668, 0.09337, 0.09035,
            0.08757, 0.08500,
        ];
        let (_, position) = tables();
        for (d, want) in expected.iter().enumerate() {
            assert!(
                (position[0][d] - want).abs() < 1e-4,
                "P(second digit = {d}) = {}, want {want}",
                position[0][d]
            );
        }
    }

    #[test]
    fn later_position_tables_are_near_uniform_distributions() {
        let (_, position) = tables();
        for row in position {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
        // The positional bias decays toward uniform by position 4.
        assert!(position[2][0] - 0.1 < 0.001);
        assert!(position[2][0] > position[2][9]);
    }

    #[test]
    fn format_is_preserved() {
        let mut rng = rng();
        for _ in 0..200 {
            let out = benford_number("1,234.56", &mut rng);
            let bytes: Vec<char> = out.chars().collect();
            assert_eq!(bytes.len(), 8, "{out}");
            assert_eq!(bytes[1], ',');
            assert_eq!(bytes[5], '.');
            assert!(out.chars().filter(|c| c.is_ascii_digit()).count() == 6);
            assert_ne!(bytes[0], '0');
        }
    }

    #[test]
    fn leading_zeros_survive() {
        let mut rng = rng();
        for _ in 0..100 {
            let out = benford_number("0.075", &mut rng);
            assert!(out.starts_with("0.0"), "{out}");
            assert_eq!(out.len(), 5);
            assert_ne!(out.as_bytes()[3], b'0');
        }
    }

    #[test]
    fn all_zero_numbers_are_left_alone() {
        let mut rng = rng();
        assert_eq!(benford_number("0", &mut rng), "0");
        assert_eq!(benford_number("0.00", &mut rng), "0.00");
    }

    #[test]
    fn empirical_first_digit_rates_match_the_law() {
        let mut rng = rng();
        let mut counts = [0u32; 10];
        let trials = 100_000;
        for _ in 0..trials {
            let out = benford_number("5,000", &mut rng);
            let d = (out.as_bytes()[0] - b'0') as usize;
            counts[d] += 1;
        }
        let p1 = counts[1] as f64 / trials as f64;
        let p9 = counts[9] as f64 / trials as f64;
        assert!((p1 - 0.301).abs() < 0.01, "P(1) = {p1}");
        assert!((p9 - 0.046).abs() < 0.005, "P(9) = {p9}");

        // Chi-square against log10(1 + 1/d), 8 degrees of freedom; the 0.01
        // critical value is 20.09.
        let (first, _) = tables();
        let chi2: f64 = (1..=9)
            .map(|d| {
                let expected = first[d - 1] * trials as f64;
                let diff = counts[d] as f64 - expected;
                diff * diff / expected
            })
            .sum();
        assert!(chi2 < 20.09, "chi2 = {chi2}");
    }

    #[test]
    fn document_numbers_are_replaced_dates_kept() {
        let mut rng = rng();
        let doc = crate::text::tokenize("Tonnage was 912 on 1894-06-14.");
        let out = replace_numbers(&doc, &mut rng);
        let tokens: Vec<_> = out.tokens().collect();
        assert!(tokens.iter().any(|t| t.class == TokenClass::Date
            && t.surface == "1894-06-14"));
        let number = tokens.iter().find(|t| t.class == TokenClass::Number).unwrap();
        assert_eq!(number.surface.len(), 3);
    }
}
