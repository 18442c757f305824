//! Scanner: raw text to the paragraph > sentence > token structure.

use std::sync::OnceLock;

use regex::Regex;

use super::{dates, pos, Document, Paragraph, PosTag, Sentence, Token, TokenClass};

fn date_iso_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^\d{4}-\d{2}-\d{2}").unwrap())
}

fn date_slash_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^\d{1,2}/\d{1,2}/\d{4}").unwrap())
}

fn date_month_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(
            r"^(?:January|February|March|April|May|June|July|August|September|October|November|December|Jan|Feb|Mar|Apr|Jun|Jul|Aug|Sept|Sep|Oct|Nov|Dec)\.? \d{1,2}, \d{4}",
        )
        .unwrap()
    })
}

fn number_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^(?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d+)?").unwrap())
}

fn word_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^[A-Za-z]+(?:['’][A-Za-z]+)*").unwrap())
}

fn next_is_digit(text: &str, end: usize) -> bool {
    text[end..].chars().next().is_some_and(|c| c.is_ascii_digit())
}

/// Match one token at `pos` (which must not point at whitespace). Returns the
/// surface, its class, and the byte length consumed.
fn match_token(text: &str, pos: usize) -> (String, TokenClass, usize) {
    let rest = &text[pos..];

    // Date patterns win over the bare digit grammar so "2019-03-15" is one
    // token rather than three numbers. A pattern match still has to be a real
    // calendar date, otherwise it falls through.
    for re in [date_iso_re(), date_slash_re(), date_month_re()] {
        if let Some(m) = re.find(rest) {
            if !next_is_digit(rest, m.end()) && dates::is_date(m.as_str()) {
                return (m.as_str().to_string(), TokenClass::Date, m.end());
            }
        }
    }

    if let Some(m) = number_re().find(rest) {
        // "1,234.5" is one number, but "1,23" is a number and a stray comma.
        if !next_is_digit(rest, m.end()) {
            return (m.as_str().to_string(), TokenClass::Number, m.end());
        }
        let plain = Regex::new(r"^\d+").unwrap().find(rest).unwrap();
        return (plain.as_str().to_string(), TokenClass::Number, plain.end());
    }

    if let Some(m) = word_re().find(rest) {
        return (m.as_str().to_string(), TokenClass::Word, m.end());
    }

    let ch = rest.chars().next().unwrap();
    (ch.to_string(), TokenClass::Punct, ch.len_utf8())
}

fn is_sentence_terminal(token: &Token, text: &str) -> bool {
    if token.class != TokenClass::Punct {
        return false;
    }
    if !matches!(token.surface.as_str(), "." | "!" | "?") {
        return false;
    }
    match text[token.span.end..].chars().next() {
        None => true,
        Some(c) => c.is_whitespace(),
    }
}

/// Split `text` into paragraphs at blank lines, sentences at terminal
/// punctuation followed by whitespace or end of input, and tokens by class.
/// Every non-whitespace character lands in exactly one token.
pub fn tokenize(text: &str) -> Document {
    let lexicon = pos::PosLexicon::shared();
    let mut paragraphs = Vec::new();
    let mut sentences: Vec<Sentence> = Vec::new();
    let mut current = Sentence::default();

    let mut pos_byte = 0usize;
    let mut blank_pending = false;

    while pos_byte < text.len() {
        let rest = &text[pos_byte..];
        let ch = rest.chars().next().unwrap();
        if ch.is_whitespace() {
            // Two newlines with only blanks between them end the paragraph.
            if ch == '\n' {
                let after = &text[pos_byte + 1..];
                let line: &str = after.split('\n').next().unwrap_or("");
                if line.trim().is_empty() && after.contains('\n') {
                    blank_pending = true;
                }
            }
            pos_byte += ch.len_utf8();
            continue;
        }

        if blank_pending {
            flush_paragraph(&mut paragraphs, &mut sentences, &mut current);
            blank_pending = false;
        }

        let (surface, class, len) = match_token(text, pos_byte);
        let tag = match class {
            TokenClass::Word => lexicon.tag(&surface),
            _ => PosTag::Other,
        };
        let token = Token {
            surface,
            class,
            pos: tag,
            span: pos_byte..pos_byte + len,
        };
        pos_byte += len;

        let terminal = is_sentence_terminal(&token, text);
        current.tokens.push(token);
        if terminal {
            sentences.push(std::mem::take(&mut current));
        }
    }

    flush_paragraph(&mut paragraphs, &mut sentences, &mut current);

    Document {
        paragraphs,
        source: text.to_string(),
    }
}

fn flush_paragraph(paragraphs: &mut Vec<Paragraph>, sentences: &mut Vec<Sentence>, current: &mut Sentence) {
    if !current.tokens.is_empty() {
        sentences.push(std::mem::take(current));
    }
    if !sentences.is_empty() {
        paragraphs.push(Paragraph {
            sentences: std::mem::take(sentences),
        });
    }
}

/// True when `surface` should attach to the preceding token without a space.
fn glues_left(surface: &str) -> bool {
    matches!(surface, "." | "," | ";" | ":" | "!" | "?" | ")" | "]" | "}" | "%" | "'" | "’" | "\"")
}

/// True when `surface` should attach to the following token without a space.
fn glues_right(surface: &str) -> bool {
    matches!(surface, "(" | "[" | "{" | "$" | "#" | "\"")
}

fn render_sentence(out: &mut String, surfaces: &[String]) {
    let mut glue_next = false;
    for (i, s) in surfaces.iter().enumerate() {
        if i > 0 && !glue_next && !glues_left(s) {
            out.push(' ');
        }
        out.push_str(s);
        glue_next = glues_right(s);
    }
}

/// Render token surfaces back to text: sentences joined with single spaces,
/// paragraphs with blank lines, punctuation re-attached. The inverse of
/// `tokenize` up to whitespace.
pub(crate) fn render_surfaces(paragraphs: &[Vec<Vec<String>>]) -> String {
    let mut out = String::new();
    for (pi, para) in paragraphs.iter().enumerate() {
        if pi > 0 {
            out.push_str("\n\n");
        }
        for (si, sent) in para.iter().enumerate() {
            if si > 0 {
                out.push(' ');
            }
            render_sentence(&mut out, sent);
        }
    }
    out
}

/// Flatten a document back to text using canonical spacing.
pub fn detokenize(doc: &Document) -> String {
    render_surfaces(&doc.to_surfaces())
}
