//! Published per-unit aggregate tables (`unit,P,IC3,FC3,IC5,FC5`).
//!
//! Counts are parsed exactly, so the ratios derived from them carry no rounding;
//! any rounded ratio columns in the input are ignored.

use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::exact::parse_decimal;

const COLUMNS: [&str; 6] = ["unit", "P", "IC3", "FC3", "IC5", "FC5"];

#[derive(Debug, Error)]
pub enum AggregateError {
    #[error("aggregate table lacks column {0:?}")]
    MissingColumn(&'static str),
    #[error("row {row}: column {column} holds non-numeric value {value:?}")]
    NonNumericCell { row: usize, column: &'static str, value: String },
    #[error("row {row}: unit {unit:?} has non-positive P")]
    NonPositiveP { row: usize, unit: String },
    #[error("row {row}: column {column} is negative")]
    NegativeCount { row: usize, column: &'static str },
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
}

/// One row of a published indicator table: a short (3-year) and a long
/// (5-year) citation window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AggregateRow {
    pub unit: String,
    pub p: u64,
    pub ic3: BigRational,
    pub fc3: BigRational,
    pub ic5: BigRational,
    pub fc5: BigRational,
}

impl AggregateRow {
    fn per_paper(&self, count: &BigRational) -> BigRational {
        count / BigRational::from_integer(self.p.into())
    }

    pub fn icp3(&self) -> BigRational {
        self.per_paper(&self.ic3)
    }

    pub fn fcp3(&self) -> BigRational {
        self.per_paper(&self.fc3)
    }

    pub fn icp5(&self) -> BigRational {
        self.per_paper(&self.ic5)
    }

    pub fn fcp5(&self) -> BigRational {
        self.per_paper(&self.fc5)
    }
}

/// Reads an aggregate table. Column lookup is by header name (case-insensitive);
/// extra columns are ignored.
pub fn load_aggregate_table(stream: &str) -> Result<Vec<AggregateRow>, AggregateError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(stream.as_bytes());
    let headers = reader.headers()?.clone();
    let mut positions = [0usize; 6];
    for (slot, name) in positions.iter_mut().zip(COLUMNS) {
        *slot = headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
            .ok_or(AggregateError::MissingColumn(name))?;
    }

    let mut rows = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let record = record?;
        let row = idx + 2;
        let cell = |i: usize| record.get(positions[i]).unwrap_or("");
        let number = |i: usize| -> Result<BigRational, AggregateError> {
            let value = parse_decimal(cell(i)).ok_or_else(|| AggregateError::NonNumericCell {
                row,
                column: COLUMNS[i],
                value: cell(i).to_string(),
            })?;
            if value.is_negative() {
                return Err(AggregateError::NegativeCount { row, column: COLUMNS[i] });
            }
            Ok(value)
        };
        let unit = cell(0).to_string();
        let p_text = cell(1);
        let p = match p_text.parse::<i64>() {
            Ok(p) if p >= 1 => p as u64,
            Ok(_) => return Err(AggregateError::NonPositiveP { row, unit }),
            Err(_) => {
                return Err(AggregateError::NonNumericCell { row, column: "P", value: p_text.to_string() })
            }
        };
        rows.push(AggregateRow { unit, p, ic3: number(2)?, fc3: number(3)?, ic5: number(4)?, fc5: number(5)? });
    }
    Ok(rows)
}
