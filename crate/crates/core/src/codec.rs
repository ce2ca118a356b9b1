//! Gauss-code text format and JSON reports.
//!
//! ```text
//! diagram   := component ("/" component)*
//! component := token*
//! token     := ("O" | "U") label sign
//! label     := positive integer
//! sign      := "+" | "-"
//! ```
//!
//! Token `i` of component `c` is slot `(c, i)`. A label's `O` token is the
//! arrow tail, its `U` token the head. Whitespace between tokens is ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Arrow, End, Endpoint, GaussDiagram, Sign};
use crate::invariants::InvariantReport;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    EmptyInput,
    #[error("malformed token at byte {offset}: {message}")]
    MalformedToken { offset: usize, message: String },
    #[error("label {label} appears {count} time(s), expected exactly 2")]
    LabelCount { label: u64, count: usize },
    #[error("label {label} needs one O and one U token")]
    OverUnderMultiplicity { label: u64 },
    #[error("sign mismatch for label {label}")]
    SignMismatch { label: u64 },
}

impl ParseError {
    /// Byte offset of the offending input, when one exists.
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::MalformedToken { offset, .. } => Some(*offset),
            _ => None,
        }
    }
}

struct Token {
    end: End,
    label: u64,
    sign: Sign,
    slot: Endpoint,
}

pub fn parse(text: &str) -> Result<GaussDiagram, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::EmptyInput);
    }
    let bytes = text.as_bytes();
    let mut tokens: Vec<Token> = Vec::new();
    let mut lengths = vec![0usize];
    let mut i = 0;
    let malformed = |offset: usize, message: &str| ParseError::MalformedToken {
        offset,
        message: message.to_string(),
    };
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if b == b'/' {
            lengths.push(0);
            i += 1;
            continue;
        }
        let start = i;
        let end = match b {
            b'O' => End::Tail,
            b'U' => End::Head,
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(malformed(
                    start,
                    &format!("expected 'O', 'U' or '/', found {ch:?}"),
                ));
            }
        };
        i += 1;
        let digits_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if digits_start == i {
            return Err(malformed(i, "expected a label after O/U"));
        }
        let label: u64 = text[digits_start..i]
            .parse()
            .map_err(|_| malformed(digits_start, "label does not fit in 64 bits"))?;
        if label == 0 {
            return Err(malformed(digits_start, "labels must be positive"));
        }
        let sign = match bytes.get(i) {
            Some(b'+') => Sign::Positive,
            Some(b'-') => Sign::Negative,
            _ => return Err(malformed(i, "expected '+' or '-' after label")),
        };
        i += 1;
        let component = lengths.len() - 1;
        tokens.push(Token {
            end,
            label,
            sign,
            slot: Endpoint::new(component, lengths[component]),
        });
        lengths[component] += 1;
    }

    let mut by_label: BTreeMap<u64, Vec<&Token>> = BTreeMap::new();
    for t in &tokens {
        by_label.entry(t.label).or_default().push(t);
    }
    let mut arrows = Vec::with_capacity(by_label.len());
    for (&label, ts) in &by_label {
        if ts.len() != 2 {
            return Err(ParseError::LabelCount {
                label,
                count: ts.len(),
            });
        }
        let (over, under) = match (ts[0].end, ts[1].end) {
            (End::Tail, End::Head) => (ts[0], ts[1]),
            (End::Head, End::Tail) => (ts[1], ts[0]),
            _ => return Err(ParseError::OverUnderMultiplicity { label }),
        };
        if over.sign != under.sign {
            return Err(ParseError::SignMismatch { label });
        }
        arrows.push(Arrow::new(over.slot, under.slot, over.sign));
    }
    Ok(GaussDiagram::new(lengths, arrows).expect("parsed diagrams satisfy slot coverage"))
}

/// Writes `d` as Gauss code, numbering labels 1, 2, ... in slot order.
///
/// A single circle without crossings comes out as the empty string, which
/// [`parse`] rejects; it is the one diagram that does not round-trip.
pub fn serialize(d: &GaussDiagram) -> String {
    let table = d.slot_table();
    let mut labels = vec![0usize; d.crossing_count()];
    let mut next = 1;
    let mut out = String::new();
    for (c, slots) in table.iter().enumerate() {
        if c > 0 {
            out.push('/');
        }
        for s in slots {
            if labels[s.arrow] == 0 {
                labels[s.arrow] = next;
                next += 1;
            }
            let letter = match s.end {
                End::Tail => 'O',
                End::Head => 'U',
            };
            let _ = write!(
                out,
                "{letter}{}{}",
                labels[s.arrow],
                d.arrows()[s.arrow].sign
            );
        }
    }
    out
}

#[derive(Serialize)]
struct ReportJson {
    lk12: i64,
    lk21: i64,
    #[serde(rename = "S")]
    s: i64,
    #[serde(rename = "T")]
    t: i64,
    crossings: usize,
    components: usize,
    rii_lower_bound: u64,
}

/// Flat JSON object with a fixed key order.
pub fn report_json(r: &InvariantReport) -> String {
    let json = ReportJson {
        lk12: r.lk01,
        lk21: r.lk10,
        s: r.s,
        t: r.t,
        crossings: r.crossings,
        components: r.components,
        rii_lower_bound: r.rii_lower_bound_to_unlink,
    };
    serde_json::to_string(&json).expect("report serializes")
}
