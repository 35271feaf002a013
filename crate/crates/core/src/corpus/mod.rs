//! Publication records and the corpus of cited and citing documents.

mod aggregate;
mod canonical;
mod tagged;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub use aggregate::{load_aggregate_table, AggregateError, AggregateRow};
pub use canonical::{load_canonical, write_canonical, CanonicalError, Side};
pub use tagged::{parse_tagged, TaggedError, TaggedParse};

/// Document type of a bibliographic record.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DocType {
    Article,
    Review,
    ProceedingsPaper,
    Other(String),
}

impl DocType {
    /// Case-insensitive mapping of an export label onto a document type.
    pub fn from_label(label: &str) -> Self {
        let trimmed = label.trim();
        match trimmed.to_ascii_lowercase().as_str() {
            "article" => DocType::Article,
            "review" => DocType::Review,
            "proceedings paper" => DocType::ProceedingsPaper,
            _ => DocType::Other(trimmed.to_string()),
        }
    }

    pub fn label(&self) -> &str {
        match self {
            DocType::Article => "Article",
            DocType::Review => "Review",
            DocType::ProceedingsPaper => "Proceedings Paper",
            DocType::Other(label) => label,
        }
    }

    /// The three document types admitted to the evaluated set by default.
    pub fn evaluated() -> BTreeSet<DocType> {
        [DocType::Article, DocType::Review, DocType::ProceedingsPaper].into_iter().collect()
    }
}

impl fmt::Display for DocType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One bibliographic record, either on the cited or on the citing side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicationRecord {
    pub id: String,
    pub year: i32,
    pub doctype: DocType,
    /// One entry per affiliation line.
    pub addresses: Vec<String>,
    /// Number of cited references as declared by the source (`NR`).
    pub nrefs: Option<u32>,
    /// Identifiers (accession numbers or DOIs) of the works this record cites.
    pub cited_ids: Vec<String>,
    pub doi: Option<String>,
}

impl PublicationRecord {
    pub fn new(id: impl Into<String>, year: i32, doctype: DocType) -> Self {
        PublicationRecord {
            id: id.into(),
            year,
            doctype,
            addresses: Vec::new(),
            nrefs: None,
            cited_ids: Vec::new(),
            doi: None,
        }
    }

    /// Reference-list length used as the denominator of the fractional weight.
    ///
    /// `nrefs` when present, otherwise the number of listed cited ids. A declared
    /// count smaller than the listed ids is raised to the listed count so that a
    /// citing document never distributes more than one full citation.
    pub fn reference_count(&self) -> u32 {
        let listed = self.cited_ids.len() as u32;
        match self.nrefs {
            Some(n) => n.max(listed),
            None => listed,
        }
    }

    fn validate(&self) -> Result<(), CorpusError> {
        if self.id.trim().is_empty() {
            return Err(CorpusError::EmptyId);
        }
        if self.year <= 0 {
            return Err(CorpusError::InvalidYear { id: self.id.clone(), year: self.year });
        }
        let mut seen = BTreeSet::new();
        for cited in &self.cited_ids {
            if !seen.insert(cited.as_str()) {
                return Err(CorpusError::DuplicateCite { id: self.id.clone(), cited: cited.clone() });
            }
        }
        Ok(())
    }
}

/// A resolved citation: `citing` cites `cited`, both by record id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Link {
    pub citing: String,
    pub cited: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("record with empty id")]
    EmptyId,
    #[error("duplicate id {id:?} on the {side} side")]
    DuplicateId { id: String, side: &'static str },
    #[error("record {id:?} has invalid year {year}")]
    InvalidYear { id: String, year: i32 },
    #[error("record {id:?} lists {cited:?} more than once")]
    DuplicateCite { id: String, cited: String },
    #[error("record {id:?} appears on both sides with different contents")]
    ConflictingSides { id: String },
}

/// The evaluated (cited) documents and the documents citing them, linked.
///
/// Immutable once built; links are sorted and unique.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    cited: BTreeMap<String, PublicationRecord>,
    citing: BTreeMap<String, PublicationRecord>,
    links: Vec<Link>,
}

impl Corpus {
    /// Builds a corpus and resolves links.
    ///
    /// A citing record's cited id becomes a link when it equals the id or the DOI
    /// (case-insensitively) of a cited-side record. Other references stay unlinked
    /// but still count toward the citing record's reference count.
    pub fn new(
        cited: impl IntoIterator<Item = PublicationRecord>,
        citing: impl IntoIterator<Item = PublicationRecord>,
    ) -> Result<Self, CorpusError> {
        let cited = index_side(cited, "cited")?;
        let citing = index_side(citing, "citing")?;
        for (id, rec) in &citing {
            if let Some(other) = cited.get(id) {
                if other != rec {
                    return Err(CorpusError::ConflictingSides { id: id.clone() });
                }
            }
        }

        let mut lookup: HashMap<String, &str> = HashMap::new();
        for (id, rec) in &cited {
            if let Some(doi) = &rec.doi {
                lookup.entry(doi.to_lowercase()).or_insert(id.as_str());
            }
        }
        // exact ids take precedence over DOI aliases
        for id in cited.keys() {
            lookup.insert(id.to_lowercase(), id.as_str());
        }

        let mut links = BTreeSet::new();
        for (citing_id, rec) in &citing {
            for reference in &rec.cited_ids {
                let target = cited
                    .get_key_value(reference)
                    .map(|(k, _)| k.as_str())
                    .or_else(|| lookup.get(&reference.to_lowercase()).copied());
                if let Some(target) = target {
                    links.insert(Link { citing: citing_id.clone(), cited: target.to_string() });
                }
            }
        }

        Ok(Corpus { cited, citing, links: links.into_iter().collect() })
    }

    pub fn cited(&self) -> impl ExactSizeIterator<Item = &PublicationRecord> {
        self.cited.values()
    }

    pub fn citing(&self) -> impl ExactSizeIterator<Item = &PublicationRecord> {
        self.citing.values()
    }

    pub fn cited_record(&self, id: &str) -> Option<&PublicationRecord> {
        self.cited.get(id)
    }

    pub fn citing_record(&self, id: &str) -> Option<&PublicationRecord> {
        self.citing.get(id)
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn is_empty(&self) -> bool {
        self.cited.is_empty() && self.citing.is_empty()
    }

    /// Links grouped by citing record, in id order.
    pub fn links_by_citing(&self) -> BTreeMap<&str, Vec<&str>> {
        let mut out: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for link in &self.links {
            out.entry(link.citing.as_str()).or_default().push(link.cited.as_str());
        }
        out
    }
}

fn index_side(
    records: impl IntoIterator<Item = PublicationRecord>,
    side: &'static str,
) -> Result<BTreeMap<String, PublicationRecord>, CorpusError> {
    let mut out = BTreeMap::new();
    for rec in records {
        rec.validate()?;
        if out.contains_key(&rec.id) {
            return Err(CorpusError::DuplicateId { id: rec.id, side });
        }
        out.insert(rec.id.clone(), rec);
    }
    Ok(out)
}
