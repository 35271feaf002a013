use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ReportError;
use crate::corpus::AggregateRow;
use crate::counting::UnitAggregate;
use crate::exact::to_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Indicator {
    P,
    Ic,
    Fc,
    Icp,
    Fcp,
}

impl Indicator {
    pub fn name(self) -> &'static str {
        match self {
            Indicator::P => "P",
            Indicator::Ic => "IC",
            Indicator::Fc => "FC",
            Indicator::Icp => "IC/P",
            Indicator::Fcp => "FC/P",
        }
    }

    /// Lowercase identifier used in CSV headers.
    pub fn slug(self) -> &'static str {
        match self {
            Indicator::P => "p",
            Indicator::Ic => "ic",
            Indicator::Fc => "fc",
            Indicator::Icp => "icp",
            Indicator::Fcp => "fcp",
        }
    }

    pub fn is_ratio(self) -> bool {
        matches!(self, Indicator::Icp | Indicator::Fcp)
    }
}

impl FromStr for Indicator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "p" => Ok(Indicator::P),
            "ic" => Ok(Indicator::Ic),
            "fc" => Ok(Indicator::Fc),
            "icp" | "ic/p" => Ok(Indicator::Icp),
            "fcp" | "fc/p" => Ok(Indicator::Fcp),
            _ => Err(format!("unknown indicator {s:?}")),
        }
    }
}

/// An indicator, tied to a citation window unless it is `P`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankKey {
    pub indicator: Indicator,
    pub window: Option<String>,
}

impl RankKey {
    pub fn p() -> Self {
        RankKey { indicator: Indicator::P, window: None }
    }

    pub fn windowed(indicator: Indicator, window: impl Into<String>) -> Self {
        RankKey { indicator, window: Some(window.into()) }
    }

    /// Column slug such as `fcp_2005-2009`.
    pub fn slug(&self) -> String {
        match &self.window {
            None => self.indicator.slug().to_string(),
            Some(w) => format!("{}_{w}", self.indicator.slug()),
        }
    }
}

impl fmt::Display for RankKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.window {
            None => f.write_str(self.indicator.name()),
            Some(w) => write!(f, "{} ({w})", self.indicator.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorRow {
    pub unit: String,
    pub p: u64,
    /// `(ic, fc)` per window, aligned with [`IndicatorTable::windows`].
    pub counts: Vec<(BigRational, BigRational)>,
}

/// Per-unit publication and citation counts over one or more windows.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorTable {
    windows: Vec<String>,
    rows: Vec<IndicatorRow>,
}

impl IndicatorTable {
    /// Rows are kept sorted by unit name.
    pub fn new(windows: Vec<String>, mut rows: Vec<IndicatorRow>) -> Result<Self, ReportError> {
        rows.sort_by(|a, b| a.unit.cmp(&b.unit));
        if let Some(w) = rows.windows(2).find(|w| w[0].unit == w[1].unit) {
            return Err(ReportError::DuplicateUnit(w[0].unit.clone()));
        }
        if let Some(r) = rows.iter().find(|r| r.counts.len() != windows.len()) {
            return Err(ReportError::WindowCountMismatch { unit: r.unit.clone() });
        }
        if let Some(r) = rows.iter().find(|r| r.p == 0) {
            return Err(ReportError::ZeroPublications(r.unit.clone()));
        }
        Ok(IndicatorTable { windows, rows })
    }

    /// The two-window layout of an aggregate table.
    pub fn from_aggregate_rows(rows: &[AggregateRow], short: &str, long: &str) -> Result<Self, ReportError> {
        let rows = rows
            .iter()
            .map(|r| IndicatorRow {
                unit: r.unit.clone(),
                p: r.p,
                counts: vec![(r.ic3.clone(), r.fc3.clone()), (r.ic5.clone(), r.fc5.clone())],
            })
            .collect();
        Self::new(vec![short.to_string(), long.to_string()], rows)
    }

    /// One window per entry; every window must cover the same units with the same `P`.
    pub fn from_unit_aggregates(per_window: &[(String, Vec<UnitAggregate>)]) -> Result<Self, ReportError> {
        let mut rows: Vec<IndicatorRow> = Vec::new();
        for (i, (_, aggregates)) in per_window.iter().enumerate() {
            let mut sorted: Vec<&UnitAggregate> = aggregates.iter().collect();
            sorted.sort_by(|a, b| a.unit.cmp(&b.unit));
            if i == 0 {
                rows = sorted
                    .iter()
                    .map(|a| IndicatorRow { unit: a.unit.clone(), p: a.p, counts: Vec::new() })
                    .collect();
            }
            let same_units = sorted.len() == rows.len()
                && sorted.iter().zip(&rows).all(|(a, r)| a.unit == r.unit && a.p == r.p);
            if !same_units {
                return Err(ReportError::UnitSetMismatch);
            }
            for (a, r) in sorted.iter().zip(rows.iter_mut()) {
                r.counts.push((BigRational::from_integer(BigInt::from(a.ic)), a.fc.clone()));
            }
        }
        Self::new(per_window.iter().map(|(w, _)| w.clone()).collect(), rows)
    }

    pub fn windows(&self) -> &[String] {
        &self.windows
    }

    pub fn rows(&self) -> &[IndicatorRow] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Keys in presentation order: `P`, then IC/P, FC/P, IC, FC across windows.
    pub fn keys(&self) -> Vec<RankKey> {
        let mut keys = vec![RankKey::p()];
        for indicator in [Indicator::Icp, Indicator::Fcp, Indicator::Ic, Indicator::Fc] {
            keys.extend(self.windows.iter().map(|w| RankKey::windowed(indicator, w.clone())));
        }
        keys
    }

    /// Every key as a labelled `f64` column, ready for correlation.
    pub fn correlation_columns(&self) -> Result<Vec<(String, Vec<f64>)>, ReportError> {
        self.keys()
            .into_iter()
            .map(|k| Ok((k.to_string(), self.column(&k)?.iter().map(|(_, v)| to_f64(v)).collect())))
            .collect()
    }

    /// Exact value of `key` for every unit, in unit order.
    pub fn column(&self, key: &RankKey) -> Result<Vec<(String, BigRational)>, ReportError> {
        let window = match (&key.window, key.indicator) {
            (None, Indicator::P) => None,
            (Some(w), ind) if ind != Indicator::P => {
                Some(self.windows.iter().position(|x| x == w).ok_or_else(|| ReportError::UnknownKey(key.to_string()))?)
            }
            _ => return Err(ReportError::UnknownKey(key.to_string())),
        };
        Ok(self
            .rows
            .iter()
            .map(|r| {
                let p = BigRational::from_integer(BigInt::from(r.p));
                let value = match (key.indicator, window) {
                    (Indicator::P, _) => p,
                    (Indicator::Ic, Some(w)) => r.counts[w].0.clone(),
                    (Indicator::Fc, Some(w)) => r.counts[w].1.clone(),
                    (Indicator::Icp, Some(w)) => &r.counts[w].0 / p,
                    (Indicator::Fcp, Some(w)) => &r.counts[w].1 / p,
                    _ => unreachable!("window presence checked above"),
                };
                (r.unit.clone(), value)
            })
            .collect())
    }
}
