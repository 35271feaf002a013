//! Random well-formed query trees.

#![allow(dead_code)]

use fraccite::unitquery::{Field, Query};
use proptest::prelude::*;

pub const WORDS: &[&str] = &["tsinghua", "univ", "dep", "phys", "chem", "eng", "sch", "china", "taiwan", "100084"];

pub fn phrase() -> impl Strategy<Value = Query> {
    prop::collection::vec(prop::sample::select(WORDS), 1..4).prop_map(|w| Query::phrase(&w))
}

/// Expressions valid inside `ad=( ... )`.
pub fn ad_expr() -> impl Strategy<Value = Query> {
    phrase().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Query::same(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Query::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Query::or(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Query::not(l, r)),
        ]
    })
}

fn py_expr() -> impl Strategy<Value = Query> {
    (2003..2008i32).prop_map(Query::YearEquals).prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Query::or(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Query::and(l, r)),
        ]
    })
}

/// Complete top-level queries.
pub fn query() -> impl Strategy<Value = Query> {
    let leaf = prop_oneof![
        4 => ad_expr().prop_map(|e| Query::scope(Field::Ad, e)),
        1 => (2003..2008i32).prop_map(Query::YearEquals),
        1 => py_expr().prop_map(|e| Query::scope(Field::Py, e)),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Query::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Query::or(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Query::not(l, r)),
        ]
    })
}
