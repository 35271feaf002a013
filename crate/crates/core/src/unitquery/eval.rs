use crate::corpus::PublicationRecord;

use super::ast::{Field, Query};
use super::lexer::is_stripped;

/// Lowercased words, with `,` `.` `(` `)` treated as separators.
pub fn normalize_address(address: &str) -> Vec<String> {
    let cleaned: String = address
        .chars()
        .map(|c| if is_stripped(c) || matches!(c, '(' | ')') { ' ' } else { c })
        .flat_map(char::to_lowercase)
        .collect();
    cleaned.split_whitespace().map(String::from).collect()
}

/// A record's searchable fields, normalized once.
#[derive(Debug, Clone)]
pub struct Searchable {
    pub year: i32,
    pub addresses: Vec<Vec<String>>,
}

impl Searchable {
    pub fn new(rec: &PublicationRecord) -> Self {
        Searchable { year: rec.year, addresses: rec.addresses.iter().map(|a| normalize_address(a)).collect() }
    }
}

/// Whether `rec` satisfies `query`.
pub fn match_record(query: &Query, rec: &PublicationRecord) -> bool {
    matches_searchable(query, &Searchable::new(rec))
}

pub fn matches_searchable(query: &Query, rec: &Searchable) -> bool {
    match query {
        Query::Scope { field: Field::Ad, expr } => ad_record(expr, rec),
        Query::Scope { field: Field::Py, expr } => matches_searchable(expr, rec),
        Query::YearEquals(year) => rec.year == *year,
        Query::And(l, r) => matches_searchable(l, rec) && matches_searchable(r, rec),
        Query::Or(l, r) => matches_searchable(l, rec) || matches_searchable(r, rec),
        Query::Not(l, r) => matches_searchable(l, rec) && !matches_searchable(r, rec),
        Query::Phrase(_) | Query::Same(..) => ad_record(query, rec),
    }
}

/// Record-level evaluation inside an ad scope: phrases match any address line.
fn ad_record(query: &Query, rec: &Searchable) -> bool {
    match query {
        Query::Phrase(tokens) => rec.addresses.iter().any(|a| contains_run(a, tokens)),
        Query::Same(l, r) => rec.addresses.iter().any(|a| ad_line(l, a, rec.year) && ad_line(r, a, rec.year)),
        Query::And(l, r) => ad_record(l, rec) && ad_record(r, rec),
        Query::Or(l, r) => ad_record(l, rec) || ad_record(r, rec),
        Query::Not(l, r) => ad_record(l, rec) && !ad_record(r, rec),
        Query::YearEquals(year) => rec.year == *year,
        Query::Scope { .. } => matches_searchable(query, rec),
    }
}

/// Evaluation against a single address line (operands of SAME).
fn ad_line(query: &Query, line: &[String], year: i32) -> bool {
    match query {
        Query::Phrase(tokens) => contains_run(line, tokens),
        Query::Same(l, r) | Query::And(l, r) => ad_line(l, line, year) && ad_line(r, line, year),
        Query::Or(l, r) => ad_line(l, line, year) || ad_line(r, line, year),
        Query::Not(l, r) => ad_line(l, line, year) && !ad_line(r, line, year),
        Query::YearEquals(y) => year == *y,
        Query::Scope { expr, .. } => ad_line(expr, line, year),
    }
}

fn contains_run(haystack: &[String], needle: &[String]) -> bool {
    if needle.is_empty() {
        return false;
    }
    haystack.windows(needle.len()).any(|w| w == needle)
}
