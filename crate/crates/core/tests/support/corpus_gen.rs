//! Random small corpora and a brute-force counting oracle.

#![allow(dead_code)]

use std::collections::BTreeMap;

use fraccite::counting::{paper_scores, CountingOptions};
use fraccite::{Corpus, DocType, PublicationRecord, Window};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

fn cited_record() -> impl Strategy<Value = (i32, DocType, bool)> {
    let doctype = prop_oneof![
        6 => Just(DocType::Article),
        1 => Just(DocType::Review),
        1 => Just(DocType::from_label("Letter")),
    ];
    (2004..2007i32, doctype, any::<bool>())
}

fn citing_record(n_cited: usize) -> impl Strategy<Value = (i32, Vec<bool>, usize, Option<u32>)> {
    (
        2003..2012i32,
        prop::collection::vec(prop::bool::weighted(0.3), n_cited),
        0..4usize,
        prop::option::weighted(0.7, 0..40u32),
    )
}

/// Corpora of at most 50 records. References resolve by id or DOI, or not at
/// all; declared reference counts may be missing or below the listed count.
pub fn corpus() -> impl Strategy<Value = Corpus> {
    (1..=20usize)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(cited_record(), n),
                prop::collection::vec(citing_record(n), 0..=(50 - n).min(30)),
            )
        })
        .prop_map(|(cited, citing)| {
            let cited_recs: Vec<PublicationRecord> = cited
                .iter()
                .enumerate()
                .map(|(i, (year, dt, has_doi))| {
                    let mut r = PublicationRecord::new(format!("C{i:02}"), *year, dt.clone());
                    if *has_doi {
                        r.doi = Some(format!("10.1000/c{i}"));
                    }
                    r
                })
                .collect();
            let citing_recs = citing
                .into_iter()
                .enumerate()
                .map(|(j, (year, picks, unresolved, nrefs))| {
                    let mut r = PublicationRecord::new(format!("Z{j:02}"), year, DocType::Article);
                    for (i, pick) in picks.iter().enumerate() {
                        if *pick {
                            let via_doi = cited_recs[i].doi.clone().filter(|_| (i + j) % 2 == 0);
                            r.cited_ids.push(via_doi.map(|d| d.to_uppercase()).unwrap_or_else(|| cited_recs[i].id.clone()));
                        }
                    }
                    for u in 0..unresolved {
                        r.cited_ids.push(format!("elsewhere-{j}-{u}"));
                    }
                    r.nrefs = nrefs;
                    r
                })
                .collect::<Vec<_>>();
            Corpus::new(cited_recs, citing_recs).expect("generated corpus is valid")
        })
}

/// Straightforward recount: every in-window citing record credits `1/k` to
/// each cited record one of its references resolves to.
pub fn brute_force(corpus: &Corpus, window: Window, options: &CountingOptions) -> BTreeMap<String, (u64, BigRational)> {
    let mut out: BTreeMap<String, (u64, BigRational)> = corpus
        .cited()
        .filter(|r| options.is_eligible(r))
        .map(|r| (r.id.clone(), (0, BigRational::zero())))
        .collect();
    for citing in corpus.citing() {
        if citing.year < window.start() || citing.year > window.end() {
            continue;
        }
        let k = citing.nrefs.unwrap_or(0).max(citing.cited_ids.len() as u32);
        if k == 0 {
            continue;
        }
        for reference in &citing.cited_ids {
            let target = corpus.cited().find(|c| {
                c.id == *reference || c.doi.as_deref().is_some_and(|d| d.eq_ignore_ascii_case(reference))
            });
            if let Some(entry) = target.and_then(|c| out.get_mut(&c.id)) {
                entry.0 += 1;
                entry.1 += BigRational::new(1.into(), k.into());
            }
        }
    }
    out
}

pub fn window() -> impl Strategy<Value = Window> {
    (2003..2012i32, 0..6i32).prop_map(|(s, len)| Window::new(s, s + len).unwrap())
}

/// Number of links from `citing` into the eligible cited set.
pub fn eligible_links(corpus: &Corpus, citing: &str, options: &CountingOptions) -> u64 {
    corpus
        .links()
        .iter()
        .filter(|l| l.citing == citing && options.is_eligible(corpus.cited_record(&l.cited).unwrap()))
        .count() as u64
}

/// Counting invariants for one corpus and window. `grow` widens the window
/// on both sides for the monotonicity check.
pub fn counting_invariants(corpus: &Corpus, w: Window, grow: i32) -> Result<(), TestCaseError> {
    let options = CountingOptions::default();
    let scores = paper_scores(corpus, w, &options);

    let oracle = brute_force(corpus, w, &options);
    prop_assert_eq!(scores.impacts.len(), oracle.len());
    for (id, (ic, fc)) in &oracle {
        let got = &scores.impacts[id];
        prop_assert_eq!(got.ic, *ic);
        prop_assert_eq!(&got.fc, fc);
    }

    for impact in scores.impacts.values() {
        prop_assert!(impact.fc <= BigRational::from_integer(impact.ic.into()));
    }

    // each citing record distributes exactly m/k
    let mut expected_total = BigRational::zero();
    for citing in corpus.citing().filter(|c| w.contains(c.year)) {
        let k = citing.reference_count();
        if k == 0 {
            // nothing listed, so nothing linked
            prop_assert_eq!(eligible_links(corpus, &citing.id, &options), 0);
            continue;
        }
        let m = eligible_links(corpus, &citing.id, &options);
        let alone = Corpus::new(corpus.cited().cloned(), [citing.clone()]).unwrap();
        let credit = paper_scores(&alone, w, &options)
            .impacts
            .values()
            .fold(BigRational::zero(), |acc, i| acc + &i.fc);
        prop_assert_eq!(&credit, &BigRational::new(m.into(), k.into()));
        expected_total += credit;
    }
    let total = scores.impacts.values().fold(BigRational::zero(), |acc, i| acc + &i.fc);
    prop_assert_eq!(total, expected_total);

    let wider = Window::new(w.start() - grow, w.end() + grow).unwrap();
    let more = paper_scores(corpus, wider, &options);
    for (id, impact) in &scores.impacts {
        prop_assert!(impact.ic <= more.impacts[id].ic);
        prop_assert!(impact.fc <= more.impacts[id].fc);
    }
    Ok(())
}
