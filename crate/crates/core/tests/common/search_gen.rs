//! Random miniature indices and queries for comparing search against the
//! exhaustive scorer.

use kbcat::kbindex::{FieldName, FieldedQuery, KnowledgeRecord, Occur, QueryClause};
use proptest::prelude::*;

use super::oracles::{OBody, OField, OOccur, PlainRecord};

const WORDS: [&str; 8] = ["alpha", "beta", "gamma", "delta", "eps", "zeta", "eta", "theta"];
const TYPES: [&str; 2] = ["freebase:person", "freebase:organization"];

fn word() -> impl Strategy<Value = String> {
    prop::sample::select(&WORDS[..]).prop_map(str::to_string)
}

fn record(i: usize) -> impl Strategy<Value = PlainRecord> {
    (
        prop::collection::vec(word(), 0..3),
        prop::collection::vec(word(), 0..9),
        prop::collection::vec(prop::collection::vec(word(), 1..3).prop_map(|w| w.join(" ")), 0..3),
        prop::sample::subsequence(&TYPES[..], 0..=2),
        0u32..10,
    )
        .prop_map(move |(title, contents, categories, types, page_rank)| {
            let mut t = title;
            t.push(format!("r{i}"));
            PlainRecord {
                title: t.join(" "),
                contents: contents.join(" "),
                categories,
                types: types.into_iter().map(str::to_string).collect(),
                page_rank,
            }
        })
}

pub fn records() -> impl Strategy<Value = Vec<PlainRecord>> {
    (1usize..=20).prop_flat_map(|n| (0..n).map(record).collect::<Vec<_>>())
}

fn clause() -> impl Strategy<Value = (OOccur, OBody)> {
    let occur = prop_oneof![
        6 => Just(OOccur::Should),
        2 => Just(OOccur::Must),
        2 => Just(OOccur::MustNot),
    ];
    let field = prop_oneof![
        4 => Just(OField::Contents),
        2 => Just(OField::Title),
        1 => Just(OField::Categories),
    ];
    let body = prop_oneof![
        7 => (field, word()).prop_map(|(f, w)| OBody::Term(f, w)),
        1 => prop::sample::select(&TYPES[..]).prop_map(|t| OBody::Term(OField::Types, t.to_string())),
        2 => (0u32..10, 0u32..10).prop_map(|(a, b)| OBody::Rank(a.min(b), a.max(b))),
    ];
    (occur, body)
}

pub fn query() -> impl Strategy<Value = Vec<(OOccur, OBody)>> {
    prop::collection::vec(clause(), 1..6)
}

pub fn to_record(p: &PlainRecord) -> KnowledgeRecord {
    let mut r = KnowledgeRecord::new(p.title.clone(), p.contents.clone());
    r.categories = p.categories.clone();
    r.entity_types = p.types.clone();
    r.page_rank = p.page_rank;
    r
}

pub fn to_query(clauses: &[(OOccur, OBody)]) -> FieldedQuery {
    FieldedQuery::new(
        clauses
            .iter()
            .map(|(o, b)| {
                let occur = match o {
                    OOccur::Should => Occur::Should,
                    OOccur::Must => Occur::Must,
                    OOccur::MustNot => Occur::MustNot,
                };
                match b {
                    OBody::Rank(lo, hi) => QueryClause::page_rank(occur, *lo, *hi),
                    OBody::Term(f, t) => {
                        let field = match f {
                            OField::Contents => FieldName::Contents,
                            OField::Title => FieldName::WikiTitle,
                            OField::Categories => FieldName::Categories,
                            OField::Types => FieldName::Types,
                        };
                        QueryClause::term(field, occur, t.clone())
                    }
                }
            })
            .collect(),
    )
}
