use std::collections::{BTreeSet, HashSet};

use crate::kbindex::{FieldName, FieldedQuery, Index, Occur, QueryClause, SearchHit};
use crate::textproc::{EntityTag, TaggedDocument};
use crate::{Error, Result};

/// Terms gathered from knowledge-base hits, each list in hit-rank order with
/// duplicates removed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnrichmentOutput {
    pub titles: Vec<String>,
    pub categories: Vec<String>,
    pub linked_concepts: Vec<String>,
}

fn push_unique(list: &mut Vec<String>, seen: &mut HashSet<String>, item: &str) {
    if seen.insert(item.to_string()) {
        list.push(item.to_string());
    }
}

fn dedup(list: &mut Vec<String>) {
    let mut seen = HashSet::new();
    list.retain(|s| seen.insert(s.clone()));
}

impl EnrichmentOutput {
    pub fn is_empty(&self) -> bool {
        self.titles.is_empty() && self.categories.is_empty() && self.linked_concepts.is_empty()
    }

    /// Appends `other` after `self`, then deduplicates each list.
    pub fn extend(&mut self, other: EnrichmentOutput) {
        self.titles.extend(other.titles);
        self.categories.extend(other.categories);
        self.linked_concepts.extend(other.linked_concepts);
        dedup(&mut self.titles);
        dedup(&mut self.categories);
        dedup(&mut self.linked_concepts);
    }

    fn from_hits(index: &Index, hits: &[SearchHit], linked: bool) -> Self {
        let mut out = EnrichmentOutput::default();
        let (mut st, mut sc, mut sl) = (HashSet::new(), HashSet::new(), HashSet::new());
        for hit in hits {
            push_unique(&mut out.titles, &mut st, &hit.record_title);
            let Some(record) = index.get_record(&hit.record_title) else {
                continue;
            };
            for c in &record.categories {
                push_unique(&mut out.categories, &mut sc, c);
            }
            if linked {
                for l in &record.linked_concepts {
                    push_unique(&mut out.linked_concepts, &mut sl, l);
                }
            }
        }
        out
    }
}

/// Settings of the E2 query beyond the document itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E2Options {
    /// Optional `wikiTitle` clause.
    pub title_term: Option<String>,
    /// Records with page rank in `1..=min_rank` are excluded.
    pub min_rank: u32,
}

impl Default for E2Options {
    fn default() -> Self {
        E2Options {
            title_term: None,
            min_rank: 5,
        }
    }
}

fn require_untagged(doc: &TaggedDocument, strategy: &str) -> Result<()> {
    if doc.representation.is_tagged() {
        return Err(Error::InvalidInput(format!(
            "{strategy} expects an untagged representation (T1 or T3), got {}",
            doc.representation
        )));
    }
    Ok(())
}

fn has_text(doc: &TaggedDocument) -> bool {
    doc.text_tokens().next().is_some()
}

/// E1: one Should `contents` clause per token, top `n` hits. Linked concepts
/// are not collected.
pub fn enrich_e1(doc: &TaggedDocument, index: &Index, n: usize) -> Result<EnrichmentOutput> {
    require_untagged(doc, "E1")?;
    let clauses: Vec<QueryClause> = doc
        .text_tokens()
        .map(|t| QueryClause::should(FieldName::Contents, t.surface.as_str()))
        .collect();
    if clauses.is_empty() {
        return Ok(EnrichmentOutput::default());
    }
    let hits = index.search(&FieldedQuery::new(clauses), n);
    Ok(EnrichmentOutput::from_hits(index, &hits, false))
}

fn e2_query(doc: &TaggedDocument, title_term: Option<&str>, min_rank: u32) -> FieldedQuery {
    let mut q = FieldedQuery::default();
    if let Some(t) = title_term {
        q.push(QueryClause::should(FieldName::WikiTitle, t));
    }
    for t in doc.text_tokens() {
        q.push(QueryClause::should(FieldName::Contents, t.surface.as_str()));
    }
    q.push(QueryClause::page_rank(Occur::MustNot, 1, min_rank));
    q
}

/// The E2 query: an optional `wikiTitle` clause, one `contents` clause per
/// token (surfaces verbatim, duplicates kept) and `-pageRank:[1 TO min_rank]`.
pub fn build_e2_query(doc: &TaggedDocument, title_term: Option<&str>, min_rank: u32) -> Result<FieldedQuery> {
    require_untagged(doc, "E2")?;
    Ok(e2_query(doc, title_term, min_rank))
}

fn run(index: &Index, query: &FieldedQuery, k: usize) -> EnrichmentOutput {
    EnrichmentOutput::from_hits(index, &index.search(query, k), true)
}

pub fn enrich_e2(doc: &TaggedDocument, index: &Index, k: usize, opts: &E2Options) -> Result<EnrichmentOutput> {
    let query = build_e2_query(doc, opts.title_term.as_deref(), opts.min_rank)?;
    if !has_text(doc) {
        return Ok(EnrichmentOutput::default());
    }
    Ok(run(index, &query, k))
}

/// E3: the E2 query plus one Should `types` clause per distinct entity kind
/// in the document.
pub fn enrich_e3(doc: &TaggedDocument, index: &Index, k: usize, opts: &E2Options) -> Result<EnrichmentOutput> {
    if !has_text(doc) {
        return Ok(EnrichmentOutput::default());
    }
    let mut query = e2_query(doc, opts.title_term.as_deref(), opts.min_rank);
    let kinds: BTreeSet<EntityTag> = doc.tags().filter(|t| *t != EntityTag::None).collect();
    for kind in kinds {
        if let Some(ty) = kind.freebase_type() {
            query.push(QueryClause::should(FieldName::Types, ty));
        }
    }
    Ok(run(index, &query, k))
}
