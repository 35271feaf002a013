//! Canonical line-delimited JSON interchange format.
//!
//! The first line is a header object (`{"format":"fraccite-corpus","version":1}`);
//! every following line holds one record:
//!
//! ```text
//! {"id":"A","side":"cited","year":2005,"doctype":"Article","addresses":["..."],"nrefs":null,"cites":[],"doi":null}
//! ```
//!
//! Unknown fields are ignored on read and never written.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Corpus, CorpusError, DocType, PublicationRecord};

const FORMAT_NAME: &str = "fraccite-corpus";
const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Cited,
    Citing,
    Both,
}

#[derive(Debug, Serialize, Deserialize)]
struct Line {
    id: String,
    side: Side,
    year: i32,
    doctype: String,
    #[serde(default)]
    addresses: Vec<String>,
    #[serde(default)]
    nrefs: Option<u32>,
    #[serde(default)]
    cites: Vec<String>,
    #[serde(default)]
    doi: Option<String>,
}

#[derive(Debug, Error)]
pub enum CanonicalError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: unsupported format header {found}")]
    UnsupportedHeader { line: usize, found: String },
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

/// Reads a canonical stream into a corpus, resolving links.
pub fn load_canonical(stream: &str) -> Result<Corpus, CanonicalError> {
    let mut cited = Vec::new();
    let mut citing = Vec::new();
    let mut first = true;
    for (idx, raw) in stream.lines().enumerate() {
        let line_no = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value = serde_json::from_str(raw)
            .map_err(|e| CanonicalError::Malformed { line: line_no, message: e.to_string() })?;
        if std::mem::take(&mut first) && value.get("id").is_none() && value.get("format").is_some() {
            check_header(&value, line_no)?;
            continue;
        }
        let line: Line = serde_json::from_value(value)
            .map_err(|e| CanonicalError::Malformed { line: line_no, message: e.to_string() })?;
        let side = line.side;
        let rec = PublicationRecord {
            id: line.id,
            year: line.year,
            doctype: DocType::from_label(&line.doctype),
            addresses: line.addresses,
            nrefs: line.nrefs,
            cited_ids: line.cites,
            doi: line.doi,
        };
        match side {
            Side::Cited => cited.push(rec),
            Side::Citing => citing.push(rec),
            Side::Both => {
                cited.push(rec.clone());
                citing.push(rec);
            }
        }
    }
    Ok(Corpus::new(cited, citing)?)
}

fn check_header(value: &serde_json::Value, line: usize) -> Result<(), CanonicalError> {
    let ok = value.get("format").and_then(|v| v.as_str()) == Some(FORMAT_NAME)
        && value.get("version").and_then(|v| v.as_u64()) == Some(FORMAT_VERSION);
    if ok {
        Ok(())
    } else {
        Err(CanonicalError::UnsupportedHeader { line, found: value.to_string() })
    }
}

/// Writes the header followed by one line per record, in id order.
pub fn write_canonical(corpus: &Corpus) -> String {
    let mut out = format!("{{\"format\":\"{FORMAT_NAME}\",\"version\":{FORMAT_VERSION}}}\n");
    let ids: BTreeSet<&str> = corpus
        .cited()
        .map(|r| r.id.as_str())
        .chain(corpus.citing().map(|r| r.id.as_str()))
        .collect();
    for id in ids {
        let (rec, side) = match (corpus.cited_record(id), corpus.citing_record(id)) {
            (Some(rec), Some(_)) => (rec, Side::Both),
            (Some(rec), None) => (rec, Side::Cited),
            (None, Some(rec)) => (rec, Side::Citing),
            (None, None) => unreachable!("id collected from the corpus"),
        };
        let line = Line {
            id: rec.id.clone(),
            side,
            year: rec.year,
            doctype: rec.doctype.label().to_string(),
            addresses: rec.addresses.clone(),
            nrefs: rec.nrefs,
            cites: rec.cited_ids.clone(),
            doi: rec.doi.clone(),
        };
        out.push_str(&serde_json::to_string(&line).expect("record serializes"));
        out.push('\n');
    }
    out
}
