//! Parser for the two-letter tagged flat-file export format.
//!
//! ```text
//! FN Clarivate Analytics Web of Science
//! VR 1.0
//! PT J
//! C1 [Li, X; Wang, Y] Tsinghua Univ, Dep Phys, Beijing 100084, Peoples R China.
//! CR Smith J, 2001, NATURE, V410, P1, DOI 10.1038/35065000
//!    Jones K, 2003, SCIENCE, V300, P2
//! NR 2
//! PY 2005
//! DT Article
//! UT WOS:000230000000001
//! ER
//!
//! EF
//! ```

use std::collections::BTreeSet;

use thiserror::Error;

use super::{DocType, PublicationRecord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TaggedError {
    #[error("line {line}: record has neither UT nor DI")]
    MissingId { line: usize },
    #[error("line {line}: record lacks required field {tag}")]
    MissingField { line: usize, tag: &'static str },
    #[error("line {line}: malformed {tag} value {value:?}")]
    MalformedField { line: usize, tag: &'static str, value: String },
    #[error("line {line}: record not terminated by ER before end of input")]
    UnterminatedRecord { line: usize },
}

impl TaggedError {
    pub fn line(&self) -> usize {
        match self {
            TaggedError::MissingId { line }
            | TaggedError::MissingField { line, .. }
            | TaggedError::MalformedField { line, .. }
            | TaggedError::UnterminatedRecord { line } => *line,
        }
    }
}

/// Accepted records plus one error per rejected record block.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct TaggedParse {
    pub records: Vec<PublicationRecord>,
    pub errors: Vec<TaggedError>,
}

struct Block {
    start: usize,
    fields: Vec<(String, usize, String)>,
}

impl Block {
    fn first(&self, tag: &str) -> Option<(usize, &str)> {
        self.fields.iter().find(|(t, _, _)| t == tag).map(|(_, l, v)| (*l, v.as_str()))
    }

    fn all<'a>(&'a self, tag: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.fields.iter().filter(move |(t, _, _)| t == tag).map(|(_, _, v)| v.as_str())
    }
}

/// Parses a tagged export into records. A malformed record is skipped and
/// reported; parsing continues with the next block.
pub fn parse_tagged(stream: &str) -> TaggedParse {
    let mut out = TaggedParse::default();
    let mut current: Option<Block> = None;
    let mut last_tag: Option<String> = None;

    for (idx, raw) in stream.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with(char::is_whitespace) {
            if let (Some(block), Some(tag)) = (current.as_mut(), last_tag.as_ref()) {
                block.fields.push((tag.clone(), line_no, line.trim().to_string()));
            }
            continue;
        }
        let (tag, value) = split_tag(line);
        match tag {
            "ER" => {
                if let Some(block) = current.take() {
                    match build_record(&block) {
                        Ok(rec) => out.records.push(rec),
                        Err(e) => out.errors.push(e),
                    }
                }
                last_tag = None;
            }
            "EF" => break,
            "FN" | "VR" if current.is_none() => {}
            _ => {
                let block = current.get_or_insert_with(|| Block { start: line_no, fields: Vec::new() });
                block.fields.push((tag.to_string(), line_no, value.to_string()));
                last_tag = Some(tag.to_string());
            }
        }
    }
    if let Some(block) = current {
        out.errors.push(TaggedError::UnterminatedRecord { line: block.start });
    }
    out
}

fn split_tag(line: &str) -> (&str, &str) {
    match line.char_indices().nth(2) {
        Some((i, _)) => (&line[..i], line[i..].trim()),
        None => (line, ""),
    }
}

fn build_record(block: &Block) -> Result<PublicationRecord, TaggedError> {
    let id = block
        .first("UT")
        .or_else(|| block.first("DI"))
        .map(|(_, v)| v.to_string())
        .filter(|v| !v.is_empty())
        .ok_or(TaggedError::MissingId { line: block.start })?;

    let (py_line, py) =
        block.first("PY").ok_or(TaggedError::MissingField { line: block.start, tag: "PY" })?;
    let year = py
        .parse::<i32>()
        .ok()
        .filter(|y| *y > 0)
        .ok_or_else(|| TaggedError::MalformedField { line: py_line, tag: "PY", value: py.to_string() })?;

    let nrefs = match block.first("NR") {
        Some((line, v)) => Some(v.parse::<u32>().map_err(|_| TaggedError::MalformedField {
            line,
            tag: "NR",
            value: v.to_string(),
        })?),
        None => None,
    };

    let doctype = block.first("DT").map(|(_, v)| parse_doctype(v)).unwrap_or(DocType::Other(String::new()));

    let addresses = block.all("C1").flat_map(split_addresses).collect();

    let mut seen = BTreeSet::new();
    let cited_ids = block
        .all("CR")
        .filter_map(extract_doi)
        .filter(|doi| seen.insert(doi.clone()))
        .collect();

    let doi = block.first("DI").map(|(_, v)| v.to_string()).filter(|v| !v.is_empty());

    Ok(PublicationRecord { id, year, doctype, addresses, nrefs, cited_ids, doi })
}

fn parse_doctype(label: &str) -> DocType {
    match DocType::from_label(label) {
        // "Article; Proceedings Paper" and similar compound labels
        DocType::Other(_) if label.contains(';') => {
            DocType::from_label(label.split(';').next().unwrap_or_default())
        }
        dt => dt,
    }
}

/// Removes bracketed author lists and splits on `;`.
fn split_addresses(line: &str) -> Vec<String> {
    let mut stripped = String::with_capacity(line.len());
    let mut depth = 0usize;
    for c in line.chars() {
        match c {
            '[' => depth += 1,
            ']' if depth > 0 => depth -= 1,
            _ if depth == 0 => stripped.push(c),
            _ => {}
        }
    }
    stripped
        .split(';')
        .map(|s| s.trim().trim_end_matches('.').trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// Extracts the value of a trailing `DOI <value>` element of a cited-reference line.
fn extract_doi(line: &str) -> Option<String> {
    let upper = line.to_ascii_uppercase();
    let pos = upper.rfind("DOI ")?;
    if pos > 0 && !matches!(line.as_bytes()[pos - 1], b' ' | b',') {
        return None;
    }
    let mut value = line[pos + 4..].trim();
    if let Some(inner) = value.strip_prefix('[') {
        value = inner.split([',', ']']).next().unwrap_or_default().trim();
    }
    let value = value.trim_end_matches(['.', ',']);
    if value.is_empty() || value.contains(char::is_whitespace) {
        return None;
    }
    Some(value.to_lowercase())
}
