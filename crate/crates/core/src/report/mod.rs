//! Indicator rankings and the homogeneity graph, written as CSV and DOT.

mod emit;
mod graph;
mod indicators;
mod ranking;

use thiserror::Error;

pub use emit::{
    all_rankings, correlation_matrix_csv, correlations_csv, display, emit_tables, exact, indicators_csv, omnibus_csv,
    pairwise_csv, rank_changes_csv, rankings_csv, OutputFile, EXACT_PLACES,
};
pub use graph::{build_homogeneity_graph, emit_graph_dot, HomogeneityGraph};
pub use indicators::{Indicator, IndicatorRow, IndicatorTable, RankKey};
pub use ranking::{rank_change, rank_units, RankEntry, Ranking};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReportError {
    #[error("rankings cover different unit sets")]
    UnitSetMismatch,
    #[error("pairwise decisions do not cover every pair; missing {missing:?}")]
    IncompletePairCoverage { missing: (String, String) },
    #[error("invalid or repeated edge {0:?} -- {1:?}")]
    InvalidEdge(String, String),
    #[error("unit {0:?} appears more than once")]
    DuplicateUnit(String),
    #[error("unit {0:?} has no publications")]
    ZeroPublications(String),
    #[error("unit {unit:?} does not have a value for every window")]
    WindowCountMismatch { unit: String },
    #[error("no indicator column {0}")]
    UnknownKey(String),
}
