//! Address-query language used to assign publications to units.
//!
//! Queries follow the bibliographic database's advanced-search style:
//! `ad=(tsinghua univ same dep phys) and ad=(china not taiwan) and py=2005`.
//! `same` requires both operands to occur in one address line; `not` is set
//! difference. See [`parser`] for the grammar.

mod ast;
mod eval;
mod lexer;
pub mod parser;
mod units;

pub use ast::{Field, Query};
pub use eval::{match_record, normalize_address};
pub use parser::{parse_query, SyntaxError};
pub use units::{assign_units, parse_definitions, AssignError, DefinitionError, UnitAssignment, UnitDefinition};
