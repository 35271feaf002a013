//! Unit definitions and assignment of cited publications to units.
//!
//! Definitions file, one unit per line, `#` starts a comment line:
//!
//! ```text
//! Dep Chem      := ad=(tsinghua univ same dep chem) and py=2005 \ minus Dep Chem Engr
//! Dep Chem Engr := ad=(tsinghua univ same dep chem eng) and py=2005
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::corpus::Corpus;

use super::ast::Query;
use super::eval::{matches_searchable, Searchable};
use super::parser::{parse_query, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitDefinition {
    pub name: String,
    pub query: Query,
    /// Units whose base results are removed from this unit's result.
    pub minus: Vec<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DefinitionError {
    #[error("line {line}: expected `<name> := <query>`")]
    MissingSeparator { line: usize },
    #[error("line {line}: empty unit name")]
    EmptyName { line: usize },
    #[error("line {line}: {source}")]
    Syntax { line: usize, source: SyntaxError },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AssignError {
    #[error("unit {0:?} is defined more than once")]
    DuplicateUnit(String),
    #[error("unit {unit:?} subtracts undefined unit {missing:?}")]
    UnknownUnitInMinus { unit: String, missing: String },
    #[error("cyclic minus chain through {0:?}")]
    CyclicMinus(String),
}

/// Cited-side publication ids per unit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UnitAssignment {
    units: BTreeMap<String, BTreeSet<String>>,
}

impl UnitAssignment {
    pub fn from_sets(units: BTreeMap<String, BTreeSet<String>>) -> Self {
        UnitAssignment { units }
    }

    pub fn papers(&self, unit: &str) -> Option<&BTreeSet<String>> {
        self.units.get(unit)
    }

    pub fn units(&self) -> impl Iterator<Item = (&str, &BTreeSet<String>)> {
        self.units.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }
}

pub fn parse_definitions(text: &str) -> Result<Vec<UnitDefinition>, DefinitionError> {
    let mut defs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (name, rest) = trimmed.split_once(":=").ok_or(DefinitionError::MissingSeparator { line })?;
        let name = name.trim();
        if name.is_empty() {
            return Err(DefinitionError::EmptyName { line });
        }
        let (query_text, minus) = match rest.rsplit_once("\\ minus") {
            Some((q, names)) => {
                (q, names.split(',').map(|n| n.trim().to_string()).filter(|n| !n.is_empty()).collect())
            }
            None => (rest, Vec::new()),
        };
        let query = parse_query(query_text).map_err(|source| DefinitionError::Syntax { line, source })?;
        defs.push(UnitDefinition { name: name.to_string(), query, minus });
    }
    Ok(defs)
}

/// Evaluates every unit's query over the cited side, then removes the base
/// results of the units named in its `minus` list.
pub fn assign_units(corpus: &Corpus, defs: &[UnitDefinition]) -> Result<UnitAssignment, AssignError> {
    check_definitions(defs)?;

    let records: Vec<(&str, Searchable)> = corpus.cited().map(|r| (r.id.as_str(), Searchable::new(r))).collect();
    let base: HashMap<&str, BTreeSet<String>> = defs
        .par_iter()
        .map(|def| {
            let hits = records
                .iter()
                .filter(|(_, s)| matches_searchable(&def.query, s))
                .map(|(id, _)| id.to_string())
                .collect();
            (def.name.as_str(), hits)
        })
        .collect();

    let units = defs
        .iter()
        .map(|def| {
            let mut set = base[def.name.as_str()].clone();
            for other in &def.minus {
                set.retain(|id| !base[other.as_str()].contains(id));
            }
            (def.name.clone(), set)
        })
        .collect();
    Ok(UnitAssignment { units })
}

fn check_definitions(defs: &[UnitDefinition]) -> Result<(), AssignError> {
    let mut index = HashMap::new();
    for (i, def) in defs.iter().enumerate() {
        if index.insert(def.name.as_str(), i).is_some() {
            return Err(AssignError::DuplicateUnit(def.name.clone()));
        }
    }
    for def in defs {
        if let Some(missing) = def.minus.iter().find(|m| !index.contains_key(m.as_str())) {
            return Err(AssignError::UnknownUnitInMinus { unit: def.name.clone(), missing: missing.clone() });
        }
    }

    // 0 = unvisited, 1 = on stack, 2 = done
    fn visit(i: usize, defs: &[UnitDefinition], index: &HashMap<&str, usize>, state: &mut [u8]) -> Result<(), AssignError> {
        match state[i] {
            1 => return Err(AssignError::CyclicMinus(defs[i].name.clone())),
            2 => return Ok(()),
            _ => {}
        }
        state[i] = 1;
        for m in &defs[i].minus {
            visit(index[m.as_str()], defs, index, state)?;
        }
        state[i] = 2;
        Ok(())
    }
    let mut state = vec![0u8; defs.len()];
    for i in 0..defs.len() {
        visit(i, defs, &index, &mut state)?;
    }
    Ok(())
}
