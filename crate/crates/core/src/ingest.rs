//! Bibliographic record ingestion.
//!
//! Input is a tab-delimited export with a header row naming (in any order)
//! the columns `UT` (record id), `AU` (authors separated by `"; "`), `PY`
//! (publication year), `DT` (document type), `TC` (times cited) and `SO`
//! (source). Extra columns are ignored.

use std::borrow::Borrow;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::{BufRead, Read, Write};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Mandatory export columns, in the order [`write_records`] emits them.
pub const COLUMNS: [&str; 6] = ["UT", "AU", "PY", "DT", "TC", "SO"];

pub const AUTHOR_DELIMITER: &str = "; ";

pub const MIN_YEAR: i32 = 1900;
pub const MAX_YEAR: i32 = 2100;

/// Document types kept by default.
pub const DEFAULT_DOC_TYPES: [&str; 2] = ["Article", "Review"];

/// One publication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiblioRecord {
    pub record_id: String,
    pub authors: Vec<String>,
    pub year: i32,
    pub doc_type: String,
    pub times_cited: u64,
    pub source: String,
}

/// Output of [`parse_records`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParsedCorpus {
    pub records: Vec<BiblioRecord>,
    /// Line numbers of rows rejected because their author field was empty.
    pub anonymous_rows: Vec<usize>,
}

/// A canonical author name of the form `SURNAME, INITIALS`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AuthorKey(String);

impl AuthorKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Wraps a string already produced by [`normalize_author`].
    pub(crate) fn from_normalized(s: &str) -> Self {
        AuthorKey(s.to_owned())
    }
}

impl fmt::Display for AuthorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for AuthorKey {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for AuthorKey {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl FromStr for AuthorKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        normalize_author(s)
    }
}

fn collapse_whitespace(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Normalizes a raw author name to `SURNAME, INITIALS`.
///
/// The name is uppercased, periods are removed and runs of whitespace become
/// single spaces. Text before the first comma is the surname; any further
/// commas are treated as whitespace. Without a comma the last token is taken
/// as the initials.
pub fn normalize_author(raw: &str) -> Result<AuthorKey> {
    let name_error = |reason| Error::Name {
        raw: raw.to_owned(),
        reason,
    };
    if raw.trim().is_empty() {
        return Err(name_error("empty name"));
    }
    let cleaned: String = raw.chars().filter(|&c| c != '.').collect::<String>().to_uppercase();

    let (surname, initials) = match cleaned.split_once(',') {
        Some((surname, rest)) => (collapse_whitespace(surname), collapse_whitespace(&rest.replace(',', " "))),
        None => {
            let tokens: Vec<&str> = cleaned.split_whitespace().collect();
            match tokens.split_last() {
                Some((last, rest)) if !rest.is_empty() => (rest.join(" "), (*last).to_owned()),
                _ => return Err(name_error("cannot separate surname from initials")),
            }
        }
    };
    if surname.is_empty() {
        return Err(name_error("empty surname"));
    }
    if initials.is_empty() {
        return Err(name_error("empty initials"));
    }
    Ok(AuthorKey(format!("{surname}, {initials}")))
}

struct ColumnIndex {
    ut: usize,
    au: usize,
    py: usize,
    dt: usize,
    tc: usize,
    so: usize,
}

impl ColumnIndex {
    fn from_header(line: &str) -> Result<Self> {
        let names: Vec<&str> = line.split('\t').map(str::trim).collect();
        let find = |col: &str| {
            names
                .iter()
                .position(|n| *n == col)
                .ok_or_else(|| Error::MissingColumn(col.to_owned()))
        };
        Ok(ColumnIndex {
            ut: find("UT")?,
            au: find("AU")?,
            py: find("PY")?,
            dt: find("DT")?,
            tc: find("TC")?,
            so: find("SO")?,
        })
    }
}

/// Parses a tab-delimited export.
///
/// Every data row yields one record, except rows whose author field is empty:
/// those are skipped and their line numbers reported in
/// [`ParsedCorpus::anonymous_rows`]. No document-type filtering happens here.
pub fn parse_records<R: BufRead>(input: R) -> Result<ParsedCorpus> {
    let mut lines = input.lines().enumerate();
    let columns = match lines.next() {
        Some((_, header)) => {
            let header = header?;
            let header = header.trim_start_matches('\u{feff}');
            ColumnIndex::from_header(header.trim_end_matches('\r'))?
        }
        None => return Err(Error::MissingColumn(COLUMNS[0].to_owned())),
    };

    let mut corpus = ParsedCorpus::default();
    let mut seen = HashSet::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let field = |i: usize, name: &str| {
            fields.get(i).map(|f| f.trim()).ok_or_else(|| Error::Row {
                line: line_no,
                message: format!("missing field {name}"),
            })
        };

        let record_id = field(columns.ut, "UT")?;
        let authors: Vec<String> = field(columns.au, "AU")?
            .split(AUTHOR_DELIMITER)
            .map(str::trim)
            .filter(|a| !a.is_empty())
            .map(str::to_owned)
            .collect();
        let year_raw = field(columns.py, "PY")?;
        let year: i32 = year_raw.parse().map_err(|_| Error::Row {
            line: line_no,
            message: format!("non-integer year {year_raw:?}"),
        })?;
        if !(MIN_YEAR..=MAX_YEAR).contains(&year) {
            return Err(Error::Row {
                line: line_no,
                message: format!("year {year} outside [{MIN_YEAR}, {MAX_YEAR}]"),
            });
        }
        let tc_raw = field(columns.tc, "TC")?;
        let times_cited: u64 = tc_raw.parse().map_err(|_| Error::Row {
            line: line_no,
            message: format!("non-integer citation count {tc_raw:?}"),
        })?;
        let doc_type = field(columns.dt, "DT")?.to_owned();
        let source = field(columns.so, "SO")?.to_owned();

        if record_id.is_empty() {
            return Err(Error::Row {
                line: line_no,
                message: "empty record id".to_owned(),
            });
        }
        if !seen.insert(record_id.to_owned()) {
            return Err(Error::DuplicateRecord {
                id: record_id.to_owned(),
                line: line_no,
            });
        }
        if authors.is_empty() {
            corpus.anonymous_rows.push(line_no);
            continue;
        }
        corpus.records.push(BiblioRecord {
            record_id: record_id.to_owned(),
            authors,
            year,
            doc_type,
            times_cited,
            source,
        });
    }
    Ok(corpus)
}

/// Writes records in the export format read by [`parse_records`].
pub fn write_records<W: Write>(records: &[BiblioRecord], mut out: W) -> Result<()> {
    writeln!(out, "{}", COLUMNS.join("\t"))?;
    for r in records {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.record_id,
            r.authors.join(AUTHOR_DELIMITER),
            r.year,
            r.doc_type,
            r.times_cited,
            r.source
        )?;
    }
    Ok(())
}

/// Keeps the records whose document type matches one of `allowed`,
/// ignoring case.
pub fn filter_documents<S: AsRef<str>>(records: &[BiblioRecord], allowed: &[S]) -> Vec<BiblioRecord> {
    let allowed: HashSet<String> = allowed.iter().map(|s| s.as_ref().trim().to_lowercase()).collect();
    records
        .iter()
        .filter(|r| allowed.contains(&r.doc_type.trim().to_lowercase()))
        .cloned()
        .collect()
}

fn dedup_in_order(authors: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut seen = HashSet::new();
    authors.into_iter().filter(|a| seen.insert(a.clone())).collect()
}

/// Replaces every author name by its normalized key and drops repeated
/// names within a record.
pub fn normalize_records(records: &[BiblioRecord]) -> Result<Vec<BiblioRecord>> {
    records
        .iter()
        .map(|r| {
            let authors = r
                .authors
                .iter()
                .map(|a| normalize_author(a).map(|k| k.0))
                .collect::<Result<Vec<_>>>()?;
            Ok(BiblioRecord {
                authors: dedup_in_order(authors),
                ..r.clone()
            })
        })
        .collect()
}

/// Maps variant author keys onto canonical ones.
///
/// Chains are resolved at construction, so every value is a key that is not
/// itself remapped.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AuthorMergeMap {
    entries: BTreeMap<AuthorKey, AuthorKey>,
}

impl AuthorMergeMap {
    pub fn new(pairs: impl IntoIterator<Item = (AuthorKey, AuthorKey)>) -> Result<Self> {
        let mut direct: BTreeMap<AuthorKey, AuthorKey> = BTreeMap::new();
        for (variant, canonical) in pairs {
            if variant == canonical {
                return Err(Error::Config(format!("`{variant}` maps to itself")));
            }
            if let Some(previous) = direct.get(&variant) {
                if *previous != canonical {
                    return Err(Error::Config(format!(
                        "`{variant}` maps to both `{previous}` and `{canonical}`"
                    )));
                }
            }
            direct.insert(variant, canonical);
        }

        let mut entries = BTreeMap::new();
        for variant in direct.keys() {
            let mut visited = vec![variant];
            let mut target = &direct[variant];
            while let Some(next) = direct.get(target) {
                if visited.contains(&target) {
                    return Err(Error::Config(format!("cyclic merge map through `{target}`")));
                }
                visited.push(target);
                target = next;
            }
            if target == variant {
                return Err(Error::Config(format!("cyclic merge map through `{variant}`")));
            }
            entries.insert(variant.clone(), target.clone());
        }
        Ok(AuthorMergeMap { entries })
    }

    /// Reads `variant,canonical` CSV rows without a header. Lines starting
    /// with `#` are comments. Both names are normalized; since normalized
    /// names contain a comma, fields are normally quoted.
    pub fn from_csv<R: Read>(input: R) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(input);
        let mut pairs = Vec::new();
        for row in reader.records() {
            let row = row?;
            if row.len() != 2 {
                let line = row.position().map_or(0, |p| p.line() as usize);
                return Err(Error::Config(format!(
                    "merge map line {line}: expected 2 fields, found {}",
                    row.len()
                )));
            }
            pairs.push((normalize_author(&row[0])?, normalize_author(&row[1])?));
        }
        Self::new(pairs)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<&AuthorKey> {
        self.entries.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AuthorKey, &AuthorKey)> {
        self.entries.iter()
    }
}

/// Rewrites merged authors to their canonical key. Authors that become
/// identical within one record collapse to their first occurrence.
pub fn apply_merge_map(records: &[BiblioRecord], map: &AuthorMergeMap) -> Vec<BiblioRecord> {
    records
        .iter()
        .map(|r| {
            let authors = r
                .authors
                .iter()
                .map(|a| map.get(a).map_or_else(|| a.clone(), |k| k.0.clone()));
            BiblioRecord {
                authors: dedup_in_order(authors),
                ..r.clone()
            }
        })
        .collect()
}

/// Sum of `times_cited` over every record listing the author. Each author of
/// a multi-author record is credited the full count.
pub fn author_citations(records: &[BiblioRecord]) -> BTreeMap<AuthorKey, u64> {
    let mut totals: BTreeMap<AuthorKey, u64> = BTreeMap::new();
    for r in records {
        let distinct: HashSet<&str> = r.authors.iter().map(String::as_str).collect();
        for a in distinct {
            *totals.entry(AuthorKey::from_normalized(a)).or_default() += r.times_cited;
        }
    }
    totals
}
