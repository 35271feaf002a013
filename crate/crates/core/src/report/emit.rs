//! CSV renderings of the report tables.
//!
//! Display columns are rounded for reading; `_exact` columns carry the value
//! to 18 decimal places.

use num_rational::BigRational;

use super::{rank_change, rank_units, Indicator, IndicatorTable, RankKey, Ranking, ReportError};
use crate::exact::format_fixed;
use crate::stats::{CorrelationMatrix, PairwiseDecision, TestResult};

pub const EXACT_PLACES: usize = 18;

/// A named output document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFile {
    pub name: String,
    pub contents: String,
}

fn csv_text<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

/// Display rounding: counts as integers, fractional counts and ratios to two places.
pub fn display(indicator: Indicator, value: &BigRational) -> String {
    match indicator {
        Indicator::P | Indicator::Ic => format_fixed(value, 0),
        Indicator::Fc | Indicator::Icp | Indicator::Fcp => format_fixed(value, 2),
    }
}

pub fn exact(value: &BigRational) -> String {
    format_fixed(value, EXACT_PLACES)
}

/// One row per unit; each indicator gets a display and an exact column.
pub fn indicators_csv(table: &IndicatorTable) -> Result<String, ReportError> {
    let keys = table.keys();
    let columns: Vec<Vec<(String, BigRational)>> = keys.iter().map(|k| table.column(k)).collect::<Result<_, _>>()?;
    let mut header = vec!["unit".to_string()];
    for k in &keys {
        header.push(k.slug());
        header.push(format!("{}_exact", k.slug()));
    }
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = table.rows().iter().enumerate().map(|(i, row)| {
        let mut cells = vec![row.unit.clone()];
        for (k, col) in keys.iter().zip(&columns) {
            cells.push(display(k.indicator, &col[i].1));
            cells.push(exact(&col[i].1));
        }
        cells
    });
    Ok(csv_text(&header, rows))
}

/// Rankings for every key of `table`, in [`IndicatorTable::keys`] order.
pub fn all_rankings(table: &IndicatorTable) -> Result<Vec<Ranking>, ReportError> {
    table.keys().into_iter().map(|k| Ok(rank_units(table.column(&k)?, k))).collect()
}

pub fn rankings_csv(rankings: &[Ranking]) -> String {
    let rows = rankings.iter().flat_map(|r| {
        r.entries.iter().map(move |e| {
            vec![
                r.key.indicator.slug().to_string(),
                r.key.window.clone().unwrap_or_default(),
                e.rank.to_string(),
                e.unit.clone(),
                display(r.key.indicator, &e.value),
                exact(&e.value),
            ]
        })
    });
    csv_text(&["indicator", "window", "rank", "unit", "value", "value_exact"], rows)
}

/// Integer-to-fractional rank changes per window, for totals (IC→FC) and
/// per-paper ratios (IC/P→FC/P). Rows follow the fractional ranking.
pub fn rank_changes_csv(table: &IndicatorTable) -> Result<String, ReportError> {
    let mut rows = Vec::new();
    for window in table.windows() {
        for (label, integer, fractional) in
            [("total", Indicator::Ic, Indicator::Fc), ("per_paper", Indicator::Icp, Indicator::Fcp)]
        {
            let a = rank_units(table.column(&RankKey::windowed(integer, window.clone()))?, RankKey::windowed(integer, window.clone()));
            let b = rank_units(
                table.column(&RankKey::windowed(fractional, window.clone()))?,
                RankKey::windowed(fractional, window.clone()),
            );
            for ((unit, delta), entry) in rank_change(&a, &b)?.into_iter().zip(&b.entries) {
                rows.push(vec![
                    label.to_string(),
                    window.clone(),
                    unit.clone(),
                    a.rank_of(&unit).expect("same unit set").to_string(),
                    entry.rank.to_string(),
                    format!("{delta:+}"),
                ]);
            }
        }
    }
    Ok(csv_text(&["comparison", "window", "unit", "integer_rank", "fractional_rank", "change"], rows))
}

/// Long form: one row per off-diagonal cell, tagged with its triangle.
pub fn correlations_csv(matrix: &CorrelationMatrix) -> String {
    let n = matrix.len();
    let rows = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| {
        let cell = matrix.cell(i, j);
        let (triangle, method) = if i > j { ("lower", "pearson") } else { ("upper", "spearman") };
        vec![
            matrix.labels[i].clone(),
            matrix.labels[j].clone(),
            triangle.to_string(),
            method.to_string(),
            cell.r.to_string(),
            cell.p_value.to_string(),
            cell.stars.marker().to_string(),
        ]
    });
    csv_text(&["row", "column", "triangle", "method", "r", "p_value", "stars"], rows)
}

/// Square layout: Pearson below the diagonal, Spearman above, three decimals plus stars.
pub fn correlation_matrix_csv(matrix: &CorrelationMatrix) -> String {
    let mut header = vec![String::new()];
    header.extend(matrix.labels.iter().cloned());
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = (0..matrix.len()).map(|i| {
        let mut cells = vec![matrix.labels[i].clone()];
        for j in 0..matrix.len() {
            if i == j {
                cells.push(String::new());
            } else {
                let c = matrix.cell(i, j);
                cells.push(format!("{:.3}{}", c.r, c.stars.marker()));
            }
        }
        cells
    });
    csv_text(&header, rows)
}

pub fn pairwise_csv(decisions: &[PairwiseDecision]) -> String {
    let rows = decisions.iter().map(|d| {
        vec![
            d.unit_i.clone(),
            d.unit_j.clone(),
            d.mean_diff.to_string(),
            d.critical_diff.to_string(),
            d.significant.to_string(),
        ]
    });
    csv_text(&["unit_i", "unit_j", "mean_diff", "critical_diff", "significant"], rows)
}

pub fn omnibus_csv(results: &[TestResult]) -> String {
    let rows = results.iter().map(|r| {
        vec![
            r.method.to_string(),
            r.statistic.to_string(),
            r.df.to_string(),
            r.p_value.to_string(),
            r.flag.map(|f| format!("{f:?}")).unwrap_or_default(),
        ]
    });
    csv_text(&["test", "statistic", "df", "p_value", "flag"], rows)
}

/// The standard report tables, plus correlation tables when a matrix is given.
pub fn emit_tables(table: &IndicatorTable, matrix: Option<&CorrelationMatrix>) -> Result<Vec<OutputFile>, ReportError> {
    let file = |name: &str, contents: String| OutputFile { name: name.to_string(), contents };
    let mut files = vec![
        file("indicators.csv", indicators_csv(table)?),
        file("rankings.csv", rankings_csv(&all_rankings(table)?)),
        file("rank_changes.csv", rank_changes_csv(table)?),
    ];
    if let Some(m) = matrix {
        files.push(file("correlations.csv", correlations_csv(m)));
        files.push(file("correlation_matrix.csv", correlation_matrix_csv(m)));
    }
    Ok(files)
}
