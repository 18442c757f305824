//! Date grammar: recognition, parsing and format-preserving re-emission.
//!
//! Three shapes are recognized: ISO `YYYY-MM-DD`, slashed `D/M/YYYY` or
//! `M/D/YYYY`, and `Month D, YYYY` (full or three-letter month names). A
//! candidate only classifies as a date if the fields form a valid calendar
//! date under at least one reading.

use chrono::{Datelike, NaiveDate};

const MONTHS: [&str; 12] = [
    "January",
    "February",
    "March",
    "April",
    "May",
    "June",
    "July",
    "August",
    "September",
    "October",
    "November",
    "December",
];

/// How the original surface spelled the date, so a perturbed date can be
/// re-emitted in the same style.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DateFormat {
    Iso,
    /// `first/second/year`; `day_first` records which field held the day.
    Slash { day_first: bool, pad: bool },
    /// `Month D, YYYY`; `abbrev` for three-letter month names.
    MonthName { abbrev: bool },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParsedDate {
    pub date: NaiveDate,
    pub format: DateFormat,
}

fn month_from_name(name: &str) -> Option<(u32, bool)> {
    let clean = name.trim_end_matches('.');
    for (i, m) in MONTHS.iter().enumerate() {
        if clean.eq_ignore_ascii_case(m) {
            return Some((i as u32 + 1, false));
        }
        if clean.len() == 3 && clean.eq_ignore_ascii_case(&m[..3]) {
            return Some((i as u32 + 1, true));
        }
    }
    if clean.eq_ignore_ascii_case("Sept") {
        return Some((9, true));
    }
    None
}

/// Parse a date token surface. `day_first` breaks the tie for slashed dates
/// where both readings are valid (e.g. `3/5/2019`).
pub fn parse_date(surface: &str, day_first: bool) -> Option<ParsedDate> {
    let s = surface.trim();

    // ISO
    if let Some((y, rest)) = s.split_once('-') {
        if let Some((m, d)) = rest.split_once('-') {
            if y.len() == 4
                && !m.is_empty()
                && !d.is_empty()
                && [y, m, d].iter().all(|f| f.bytes().all(|b| b.is_ascii_digit()))
            {
                let date =
                    NaiveDate::from_ymd_opt(y.parse().ok()?, m.parse().ok()?, d.parse().ok()?)?;
                return Some(ParsedDate {
                    date,
                    format: DateFormat::Iso,
                });
            }
        }
    }

    // Slashed
    let fields: Vec<&str> = s.split('/').collect();
    if fields.len() == 3 && fields.iter().all(|f| !f.is_empty() && f.bytes().all(|b| b.is_ascii_digit())) {
        let a: u32 = fields[0].parse().ok()?;
        let b: u32 = fields[1].parse().ok()?;
        let year: i32 = fields[2].parse().ok()?;
        if fields[2].len() == 4 {
            let pad = fields[0].len() == 2 || fields[1].len() == 2;
            let dmy = NaiveDate::from_ymd_opt(year, b, a);
            let mdy = NaiveDate::from_ymd_opt(year, a, b);
            let (date, df) = match (dmy, mdy) {
                (Some(d), Some(m)) => {
                    if day_first {
                        (d, true)
                    } else {
                        (m, false)
                    }
                }
                (Some(d), None) => (d, true),
                (None, Some(m)) => (m, false),
                (None, None) => return None,
            };
            return Some(ParsedDate {
                date,
                format: DateFormat::Slash {
                    day_first: df,
                    pad,
                },
            });
        }
    }

    // Month D, YYYY
    let mut words = s.split_whitespace();
    if let (Some(month_word), Some(day_word), Some(year_word), None) =
        (words.next(), words.next(), words.next(), words.next())
    {
        let (month, abbrev) = month_from_name(month_word)?;
        let day_digits = day_word.trim_end_matches(',');
        if day_word.ends_with(',')
            && day_digits.bytes().all(|b| b.is_ascii_digit())
            && year_word.len() == 4
            && year_word.bytes().all(|b| b.is_ascii_digit())
        {
            let date = NaiveDate::from_ymd_opt(
                year_word.parse().ok()?,
                month,
                day_digits.parse().ok()?,
            )?;
            return Some(ParsedDate {
                date,
                format: DateFormat::MonthName { abbrev },
            });
        }
    }

    None
}

/// True when the surface parses as a calendar date under any field order.
pub fn is_date(surface: &str) -> bool {
    parse_date(surface, false).is_some() || parse_date(surface, true).is_some()
}

/// Re-emit `date` in the textual style captured at parse time.
pub fn format_date(date: NaiveDate, format: DateFormat) -> String {
    match format {
        DateFormat::Iso => format!("{:04}-{:02}-{:02}", date.year(), date.month(), date.day()),
        DateFormat::Slash { day_first, pad } => {
            let (a, b) = if day_first {
                (date.day(), date.month())
            } else {
                (date.month(), date.day())
            };
            if pad {
                format!("{:02}/{:02}/{:04}", a, b, date.year())
            } else {
                format!("{}/{}/{:04}", a, b, date.year())
            }
        }
        DateFormat::MonthName { abbrev } => {
            let name = MONTHS[date.month0() as usize];
            let name = if abbrev { &name[..3] } else { name };
            format!("{} {}, {}", name, date.day(), date.year())
        }
    }
}
