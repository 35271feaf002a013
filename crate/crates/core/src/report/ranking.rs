use std::collections::BTreeMap;

use num_rational::BigRational;

use super::{RankKey, ReportError};

#[derive(Debug, Clone, PartialEq)]
pub struct RankEntry {
    pub rank: usize,
    pub unit: String,
    pub value: BigRational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    pub key: RankKey,
    pub entries: Vec<RankEntry>,
}

impl Ranking {
    pub fn rank_of(&self, unit: &str) -> Option<usize> {
        self.entries.iter().find(|e| e.unit == unit).map(|e| e.rank)
    }
}

/// Descending by exact value; equal values are ordered by unit name.
/// Ranks run `1..=n` without gaps.
pub fn rank_units(values: Vec<(String, BigRational)>, key: RankKey) -> Ranking {
    let mut values = values;
    values.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let entries = values
        .into_iter()
        .enumerate()
        .map(|(i, (unit, value))| RankEntry { rank: i + 1, unit, value })
        .collect();
    Ranking { key, entries }
}

/// `rank_in_a − rank_in_b` per unit, listed in `b`'s order. Positive means
/// the unit moved up in `b`.
pub fn rank_change(a: &Ranking, b: &Ranking) -> Result<Vec<(String, i64)>, ReportError> {
    let ranks_a: BTreeMap<&str, usize> = a.entries.iter().map(|e| (e.unit.as_str(), e.rank)).collect();
    if ranks_a.len() != b.entries.len() {
        return Err(ReportError::UnitSetMismatch);
    }
    b.entries
        .iter()
        .map(|e| {
            let ra = ranks_a.get(e.unit.as_str()).ok_or(ReportError::UnitSetMismatch)?;
            Ok((e.unit.clone(), *ra as i64 - e.rank as i64))
        })
        .collect()
}
