//! A-polynomial tables: the record format, loading, and batch verification.
//!
//! Record files are UTF-8, one record per line:
//!
//! ```text
//! # comment
//! name ; polynomial ; flags
//! ```
//!
//! `flags` is optional, comma or whitespace separated, from `refined`,
//! `computed`, `fixture` and `ingested` (the default source).

mod batch;
mod fixtures;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;

pub use batch::{verify_all, verify_table, BatchReport, BatchStatus, BatchSummary, RecordOutcome, VerifyOptions};
pub use fixtures::{bundled_records, render_table, synthetic_unit_form_records, BUNDLED_MAX_P};
pub use parse::parse_poly;

use crate::error::{Error, Result};
use crate::poly::BivarPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Ingested,
    Computed,
    Fixture,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ingested => "ingested",
            Self::Computed => "computed",
            Self::Fixture => "fixture",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DbRecord {
    pub name: String,
    pub source: Source,
    /// In A-normal form.
    pub a_poly: BivarPoly,
    /// Per-component polynomial; exempt from the nontriviality verdict.
    pub refined: bool,
    /// What normalization changed relative to the input text.
    pub notes: Vec<String>,
}

impl DbRecord {
    /// Normalizes `poly` and records any monomial, content or sign change.
    pub fn new(name: &str, poly: &BivarPoly, source: Source, refined: bool) -> Result<Self> {
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::InvalidKnot("record name is empty".to_string()));
        }
        let n = poly.normalize()?;
        let s = &n.stripped;
        let mut notes = Vec::new();
        if s.m0 > 0 || s.l0 > 0 {
            notes.push(format!("removed monomial factor M^{}*L^{}", s.m0, s.l0));
        }
        if s.content != num_bigint::BigInt::from(1) {
            notes.push(format!("removed integer content {}", s.content));
        }
        if s.sign < 0 {
            notes.push("flipped overall sign".to_string());
        }
        Ok(Self {
            name: name.to_string(),
            source,
            a_poly: n.poly,
            refined,
            notes,
        })
    }

    /// The unknot is recognised by name.
    pub fn is_unknot(&self) -> bool {
        matches!(self.name.as_str(), "unknot" | "0_1")
    }

    pub fn to_line(&self) -> String {
        let mut flags = vec![self.source.to_string()];
        if self.refined {
            flags.push("refined".to_string());
        }
        format!("{} ; {} ; {}", self.name, self.a_poly, flags.join(","))
    }
}

/// A malformed or duplicate record, with its 1-based line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecordError {
    pub line: usize,
    pub name: String,
    pub message: String,
}

impl fmt::Display for RecordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.name.is_empty() {
            write!(f, "line {}: {}", self.line, self.message)
        } else {
            write!(f, "line {} ({}): {}", self.line, self.name, self.message)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub records: Vec<DbRecord>,
    pub errors: Vec<RecordError>,
}

fn parse_flags(text: &str) -> std::result::Result<(Source, bool), String> {
    let mut source = Source::Ingested;
    let mut refined = false;
    for flag in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|f| !f.is_empty()) {
        match flag {
            "refined" => refined = true,
            "computed" => source = Source::Computed,
            "fixture" => source = Source::Fixture,
            "ingested" => source = Source::Ingested,
            other => return Err(format!("unknown flag '{other}'")),
        }
    }
    Ok((source, refined))
}

/// Column numbers in errors count from the start of `line`.
fn parse_line(line: &str) -> std::result::Result<DbRecord, (String, String)> {
    let poly_offset = line.find(';').map_or(0, |i| line[..=i].chars().count());
    let mut fields = line.splitn(3, ';');
    let name = fields.next().unwrap_or("").trim().to_string();
    let Some(poly_text) = fields.next() else {
        return Err((name, "expected 'name ; polynomial [; flags]'".to_string()));
    };
    let (source, refined) = parse_flags(fields.next().unwrap_or("")).map_err(|m| (name.clone(), m))?;
    let poly = parse_poly(poly_text).map_err(|e| match e {
        Error::Syntax { column, message, .. } => {
            (name.clone(), format!("column {}: {message}", poly_offset + column))
        }
        other => (name.clone(), other.to_string()),
    })?;
    DbRecord::new(&name, &poly, source, refined).map_err(|e| (name.clone(), e.to_string()))
}

/// Parses record text. Malformed lines and duplicate names are collected;
/// the first occurrence of a duplicated name is kept.
pub fn parse_table(text: &str) -> Table {
    let mut table = Table::default();
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim_end();
        if line.trim().is_empty() {
            continue;
        }
        match parse_line(line) {
            Ok(rec) => {
                if let Some(first) = seen.get(&rec.name) {
                    table.errors.push(RecordError {
                        line: i + 1,
                        name: rec.name.clone(),
                        message: format!("DuplicateName: '{}' already defined on line {first}", rec.name),
                    });
                } else {
                    seen.insert(rec.name.clone(), i + 1);
                    table.records.push(rec);
                }
            }
            Err((name, message)) => table.errors.push(RecordError {
                line: i + 1,
                name,
                message,
            }),
        }
    }
    table
}

pub fn load_table(path: &Path) -> Result<Table> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_table(&text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_record() {
        let t = parse_table("unknot; L - 1");
        assert_eq!(t.records.len(), 1);
        assert!(t.errors.is_empty());
        assert!(t.records[0].is_unknot());
        assert_eq!(t.records[0].source, Source::Ingested);
    }

    #[test]
    fn empty_and_comments() {
        assert_eq!(parse_table(""), Table::default());
        assert_eq!(parse_table("# nothing\n\n   # here\n"), Table::default());
        let t = parse_table("3_1 ; L^2*M^6 - L*M^6 + L - 1 ; computed # trefoil\n");
        assert_eq!(t.records[0].source, Source::Computed);
    }

    #[test]
    fn duplicates_are_named() {
        let t = parse_table("a ; L - 1\nb ; L + M\na ; L + 1\n");
        assert_eq!(t.records.len(), 2);
        assert_eq!(t.errors.len(), 1);
        assert_eq!(t.errors[0].name, "a");
        assert_eq!(t.errors[0].line, 3);
        assert!(t.errors[0].message.starts_with("DuplicateName"));
    }

    #[test]
    fn malformed_records_do_not_abort() {
        let t = parse_table("bad ; L + + 1\nnofield\ngood ; L - 1 ; refined\nweird ; L ; sparkly\n");
        assert_eq!(t.records.len(), 1);
        assert!(t.records[0].refined);
        let lines: Vec<usize> = t.errors.iter().map(|e| e.line).collect();
        assert_eq!(lines, vec![1, 2, 4]);
        assert!(t.errors[0].message.contains("column 11"), "{}", t.errors[0].message);
        assert_eq!(t.errors[1].name, "nofield");
    }

    #[test]
    fn normalization_notes() {
        let t = parse_table("x ; -2*M*L^2 + 2*M*L");
        let r = &t.records[0];
        assert_eq!(r.a_poly.to_string(), "L - 1");
        assert_eq!(r.notes.len(), 3);
        assert_eq!(parse_table(&r.to_line()).records[0].a_poly, r.a_poly);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        let t = parse_table("z ; L - L");
        assert!(t.records.is_empty());
        assert_eq!(t.errors.len(), 1);
    }

    #[test]
    fn missing_file() {
        assert!(matches!(
            load_table(Path::new("/nonexistent/table.txt")),
            Err(Error::Io(_))
        ));
    }
}
