//! Integer and fractional citation counts per paper and per unit.
//!
//! Every citation link adds 1 to the cited paper's integer count and `1/k` to
//! its fractional count, `k` being the reference-list length of the citing
//! paper. Fractional sums are exact rationals, so totals do not depend on the
//! order (or thread) in which links are visited.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::corpus::{Corpus, DocType, PublicationRecord};
use crate::exact::{format_fixed, to_f64};
use crate::unitquery::UnitAssignment;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountingError {
    #[error("citing record {0:?} has no resolvable reference count")]
    ZeroReferences(String),
    #[error("unknown unit {0:?}")]
    UnknownUnit(String),
    #[error("invalid window {start}:{end}")]
    InvalidWindow { start: i32, end: i32 },
}

/// Inclusive range of citing-publication years.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    start: i32,
    end: i32,
}

impl Window {
    pub fn new(start: i32, end: i32) -> Result<Self, CountingError> {
        if start > end {
            return Err(CountingError::InvalidWindow { start, end });
        }
        Ok(Window { start, end })
    }

    pub fn start(&self) -> i32 {
        self.start
    }

    pub fn end(&self) -> i32 {
        self.end
    }

    pub fn contains(&self, year: i32) -> bool {
        (self.start..=self.end).contains(&year)
    }

    pub fn contains_window(&self, other: &Window) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.start, self.end)
    }
}

impl FromStr for Window {
    type Err = String;

    /// `START:END`, or a single year.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once(':').unwrap_or((s, s));
        let parse = |t: &str| t.trim().parse::<i32>().map_err(|_| format!("invalid window {s:?}, expected START:END"));
        Window::new(parse(a)?, parse(b)?).map_err(|e| e.to_string())
    }
}

/// Citation counts of one cited paper within one window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperImpact {
    pub paper_id: String,
    pub ic: u64,
    pub fc: BigRational,
}

impl PaperImpact {
    fn uncited(paper_id: &str) -> Self {
        PaperImpact { paper_id: paper_id.to_string(), ic: 0, fc: BigRational::zero() }
    }
}

/// Which records take part in counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingOptions {
    /// Document types admitted to the evaluated (cited) set.
    pub cited_doctypes: BTreeSet<DocType>,
    /// Publication years of the evaluated set; `None` admits every year.
    pub publication_years: Option<BTreeSet<i32>>,
    /// Document types of citing records that contribute; `None` admits all.
    pub citing_doctypes: Option<BTreeSet<DocType>>,
}

impl Default for CountingOptions {
    fn default() -> Self {
        CountingOptions { cited_doctypes: DocType::evaluated(), publication_years: None, citing_doctypes: None }
    }
}

impl CountingOptions {
    pub fn is_eligible(&self, rec: &PublicationRecord) -> bool {
        self.cited_doctypes.contains(&rec.doctype)
            && self.publication_years.as_ref().is_none_or(|years| years.contains(&rec.year))
    }

    fn citing_admitted(&self, rec: &PublicationRecord) -> bool {
        self.citing_doctypes.as_ref().is_none_or(|types| types.contains(&rec.doctype))
    }
}

/// Per-paper impacts for every eligible cited paper in one window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperScores {
    pub window: Window,
    pub impacts: BTreeMap<String, PaperImpact>,
    /// Citing records excluded because their reference count is zero.
    pub skipped_citing: Vec<String>,
}

/// The weight `1/k` one citation from `citing` carries.
pub fn fractional_weight(citing: &PublicationRecord) -> Result<BigRational, CountingError> {
    match citing.reference_count() {
        0 => Err(CountingError::ZeroReferences(citing.id.clone())),
        k => Ok(BigRational::new(One::one(), k.into())),
    }
}

type Partial<'a> = (HashMap<&'a str, (u64, BigRational)>, Vec<String>);

/// Counts in-window citations to every eligible cited paper.
///
/// Citing documents are processed in parallel; the reduction is an exact
/// rational sum.
pub fn paper_scores(corpus: &Corpus, window: Window, options: &CountingOptions) -> PaperScores {
    let eligible: BTreeSet<&str> =
        corpus.cited().filter(|r| options.is_eligible(r)).map(|r| r.id.as_str()).collect();
    let by_citing: Vec<(&str, Vec<&str>)> = corpus.links_by_citing().into_iter().collect();

    let (sums, mut skipped) = by_citing
        .par_iter()
        .fold(
            || -> Partial<'_> { (HashMap::new(), Vec::new()) },
            |(mut acc, mut skipped), (citing_id, cited)| {
                let rec = corpus.citing_record(citing_id).expect("link endpoint exists");
                if !window.contains(rec.year) || !options.citing_admitted(rec) {
                    return (acc, skipped);
                }
                let weight = match fractional_weight(rec) {
                    Ok(w) => w,
                    Err(_) => {
                        skipped.push(rec.id.clone());
                        return (acc, skipped);
                    }
                };
                for &paper in cited.iter().filter(|p| eligible.contains(*p)) {
                    let entry = acc.entry(paper).or_insert_with(|| (0, BigRational::zero()));
                    entry.0 += 1;
                    entry.1 += &weight;
                }
                (acc, skipped)
            },
        )
        .reduce(
            || (HashMap::new(), Vec::new()),
            |(mut a, mut sa), (b, sb)| {
                for (paper, (ic, fc)) in b {
                    let entry = a.entry(paper).or_insert_with(|| (0, BigRational::zero()));
                    entry.0 += ic;
                    entry.1 += fc;
                }
                sa.extend(sb);
                (a, sa)
            },
        );
    skipped.sort();

    let impacts = eligible
        .iter()
        .map(|&id| {
            let impact = match sums.get(id) {
                Some((ic, fc)) => PaperImpact { paper_id: id.to_string(), ic: *ic, fc: fc.clone() },
                None => PaperImpact::uncited(id),
            };
            (id.to_string(), impact)
        })
        .collect();
    PaperScores { window, impacts, skipped_citing: skipped }
}

/// Unit-level totals in one window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitAggregate {
    pub unit: String,
    pub p: u64,
    pub ic: u64,
    pub fc: BigRational,
}

impl UnitAggregate {
    pub fn icp(&self) -> BigRational {
        BigRational::new(self.ic.into(), self.p.into())
    }

    pub fn fcp(&self) -> BigRational {
        &self.fc / BigRational::from_integer(self.p.into())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AggregateOutcome {
    pub included: Vec<UnitAggregate>,
    /// Units below the publication threshold, with their publication counts.
    pub skipped: Vec<(String, u64)>,
}

/// Sums paper impacts per unit. A paper assigned to several units counts fully
/// in each; only papers present in `scores` (the eligible set) count toward `p`.
pub fn aggregate_units(assignment: &UnitAssignment, scores: &PaperScores, min_pubs: u64) -> AggregateOutcome {
    let mut out = AggregateOutcome::default();
    for (unit, papers) in assignment.units() {
        let impacts: Vec<&PaperImpact> = papers.iter().filter_map(|id| scores.impacts.get(id)).collect();
        let p = impacts.len() as u64;
        if p < min_pubs || p == 0 {
            out.skipped.push((unit.to_string(), p));
            continue;
        }
        let ic = impacts.iter().map(|i| i.ic).sum();
        let fc = impacts.iter().fold(BigRational::zero(), |acc, i| acc + &i.fc);
        out.included.push(UnitAggregate { unit: unit.to_string(), p, ic, fc });
    }
    out
}

/// Fractional counts of a unit's eligible papers, in paper-id order, zeros included.
pub fn per_paper_samples(
    assignment: &UnitAssignment,
    scores: &PaperScores,
    unit: &str,
) -> Result<Vec<f64>, CountingError> {
    let papers = assignment.papers(unit).ok_or_else(|| CountingError::UnknownUnit(unit.to_string()))?;
    Ok(papers.iter().filter_map(|id| scores.impacts.get(id)).map(|i| to_f64(&i.fc)).collect())
}

/// CSV of per-paper scores: `paper_id,unit,ic,fc_num,fc_den,fc_decimal`.
///
/// One row per (paper, unit) pair; papers outside every unit get an empty unit.
pub fn write_scores_csv(assignment: &UnitAssignment, scores: &PaperScores) -> String {
    let mut units_of: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (unit, papers) in assignment.units() {
        for paper in papers {
            units_of.entry(paper.as_str()).or_default().push(unit);
        }
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["paper_id", "unit", "ic", "fc_num", "fc_den", "fc_decimal"]).expect("in-memory write");
    for (id, impact) in &scores.impacts {
        let units = units_of.get(id.as_str()).cloned().unwrap_or_else(|| vec![""]);
        for unit in units {
            writer
                .write_record([
                    id.as_str(),
                    unit,
                    &impact.ic.to_string(),
                    &impact.fc.numer().to_string(),
                    &impact.fc.denom().to_string(),
                    &format_fixed(&impact.fc, 12),
                ])
                .expect("in-memory write");
        }
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}
