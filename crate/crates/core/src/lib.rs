//! Citation impact evaluation of organizational units by fractional counting.
//!
//! Each citation a paper receives is weighted `1/k`, where `k` is the length of
//! the citing paper's reference list. The crate covers the full path from raw
//! bibliographic exports to significance testing:
//!
//! - [`corpus`]: publication records and the file formats that carry them.
//! - [`unitquery`]: the address-query language that assigns publications to units.
//! - [`counting`]: integer and fractional citation counts as exact rationals.
//! - [`stats`]: correlation and significance testing.
//! - [`report`]: rankings and the homogeneity graph, written as CSV and DOT.

pub mod corpus;
pub mod counting;
pub mod exact;
pub mod report;
pub mod stats;
pub mod unitquery;

pub use corpus::{Corpus, DocType, PublicationRecord};
pub use counting::{PaperImpact, UnitAggregate, Window};

