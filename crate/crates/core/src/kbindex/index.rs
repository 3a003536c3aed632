use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ClauseBody, FieldName, FieldedQuery, KnowledgeRecord, Occur};
use crate::textproc::tokenize;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SearchHit {
    pub record_title: String,
    pub score: f64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
struct FieldIndex {
    /// term -> (record, term frequency), records ascending
    postings: BTreeMap<String, Vec<(u32, u32)>>,
    /// token count of the field per record
    lengths: Vec<u32>,
}

impl FieldIndex {
    fn add(&mut self, record: u32, terms: Vec<String>) {
        self.lengths.push(terms.len() as u32);
        let mut counts: BTreeMap<String, u32> = BTreeMap::new();
        for t in terms {
            *counts.entry(t).or_default() += 1;
        }
        for (term, tf) in counts {
            self.postings.entry(term).or_default().push((record, tf));
        }
    }

    fn tf(&self, term: &str, record: u32) -> u32 {
        self.postings
            .get(term)
            .and_then(|p| p.binary_search_by_key(&record, |&(r, _)| r).ok().map(|i| p[i].1))
            .unwrap_or(0)
    }

    fn df(&self, term: &str) -> usize {
        self.postings.get(term).map_or(0, Vec::len)
    }
}

/// Write-once fielded inverted index over knowledge records.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Index {
    records: Vec<KnowledgeRecord>,
    fields: BTreeMap<FieldName, FieldIndex>,
    #[serde(skip)]
    by_title: HashMap<String, usize>,
}

fn token_stream<'a>(items: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    items
        .into_iter()
        .flat_map(|s| tokenize(s).into_iter().map(|t| t.surface.to_lowercase()))
        .collect()
}

fn field_terms(record: &KnowledgeRecord, field: FieldName) -> Vec<String> {
    match field {
        FieldName::Contents => token_stream([record.contents.as_str()]),
        FieldName::WikiTitle => token_stream([record.title.as_str()]),
        FieldName::Redirects => token_stream(record.redirects.iter().map(String::as_str)),
        FieldName::Types => record.entity_types.iter().map(|t| super::normalize_type(t)).collect(),
        FieldName::Categories => token_stream(record.categories.iter().map(String::as_str)),
        FieldName::LinkedConcepts => token_stream(record.linked_concepts.iter().map(String::as_str)),
        FieldName::PageRank => Vec::new(),
    }
}

enum Prepared {
    Term(String),
    Range(u32, u32),
}

impl Index {
    pub fn build(records: Vec<KnowledgeRecord>) -> Result<Self> {
        let mut by_title = HashMap::with_capacity(records.len());
        for (i, r) in records.iter().enumerate() {
            if by_title.insert(r.title.clone(), i).is_some() {
                return Err(Error::DuplicateTitle(r.title.clone()));
            }
        }
        let mut fields: BTreeMap<FieldName, FieldIndex> = FieldName::TEXT_FIELDS.iter().map(|&f| (f, FieldIndex::default())).collect();
        for (i, r) in records.iter().enumerate() {
            for (&field, fi) in fields.iter_mut() {
                fi.add(i as u32, field_terms(r, field));
            }
        }
        Ok(Index { records, fields, by_title })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[KnowledgeRecord] {
        &self.records
    }

    pub fn get_record(&self, title: &str) -> Option<&KnowledgeRecord> {
        self.by_title.get(title).map(|&i| &self.records[i])
    }

    /// Term frequency of an already-normalised term in one record's field.
    pub fn tf(&self, field: FieldName, term: &str, title: &str) -> u32 {
        match (self.fields.get(&field), self.by_title.get(title)) {
            (Some(fi), Some(&i)) => fi.tf(term, i as u32),
            _ => 0,
        }
    }

    pub fn df(&self, field: FieldName, term: &str) -> usize {
        self.fields.get(&field).map_or(0, |fi| fi.df(term))
    }

    /// Number of distinct terms in a field.
    pub fn vocabulary_size(&self, field: FieldName) -> usize {
        self.fields.get(&field).map_or(0, |fi| fi.postings.len())
    }

    /// `1 + ln(N / (df + 1))`
    pub fn idf(&self, field: FieldName, term: &str) -> f64 {
        1.0 + (self.records.len() as f64 / (self.df(field, term) as f64 + 1.0)).ln()
    }

    fn prepare(query: &FieldedQuery) -> Vec<(FieldName, Occur, Prepared)> {
        query
            .clauses
            .iter()
            .map(|c| {
                let body = match &c.body {
                    ClauseBody::Term(t) => Prepared::Term(c.field.normalize_term(t)),
                    ClauseBody::Range(lo, hi) => Prepared::Range(*lo, *hi),
                };
                (c.field, c.occur, body)
            })
            .collect()
    }

    fn score_record(&self, prepared: &[(FieldName, Occur, Prepared)], record: u32) -> Option<f64> {
        let total = prepared.iter().filter(|(_, o, _)| *o != Occur::MustNot).count();
        if total == 0 {
            return None;
        }
        let page_rank = self.records[record as usize].page_rank;
        let mut matched = 0usize;
        let mut matched_term = false;
        let mut sum = 0.0f64;
        for (field, occur, body) in prepared {
            let (is_match, contribution) = match body {
                Prepared::Range(lo, hi) => (*field == FieldName::PageRank && *lo <= page_rank && page_rank <= *hi, 0.0),
                Prepared::Term(term) => {
                    let fi = match self.fields.get(field) {
                        Some(fi) => fi,
                        None => {
                            if *occur == Occur::Must {
                                return None;
                            }
                            continue;
                        }
                    };
                    let tf = fi.tf(term, record);
                    if tf == 0 {
                        (false, 0.0)
                    } else if field.is_scored() {
                        let idf = self.idf(*field, term);
                        let norm = 1.0 / (fi.lengths[record as usize] as f64).sqrt();
                        (true, (tf as f64).sqrt() * idf * idf * norm)
                    } else {
                        (true, 0.0)
                    }
                }
            };
            match occur {
                Occur::MustNot if is_match => return None,
                Occur::MustNot => continue,
                Occur::Must if !is_match => return None,
                _ => {}
            }
            if is_match {
                matched += 1;
                sum += contribution;
                matched_term |= matches!(body, Prepared::Term(_));
            }
        }
        if !matched_term {
            return None;
        }
        Some(matched as f64 / total as f64 * sum)
    }

    /// Practical score of one record, or `None` when it is not a candidate
    /// for the query.
    ///
    /// `coord · Σ sqrt(tf) · idf² · fieldNorm` over matching scored term
    /// clauses, with `coord` = matching clauses / non-MustNot clauses.
    pub fn score(&self, query: &FieldedQuery, title: &str) -> Option<f64> {
        let &i = self.by_title.get(title)?;
        self.score_record(&Self::prepare(query), i as u32)
    }

    /// Top `n` records by score; ties broken by title.
    pub fn search(&self, query: &FieldedQuery, n: usize) -> Vec<SearchHit> {
        if n == 0 || !query.is_scoreable() {
            return Vec::new();
        }
        let prepared = Self::prepare(query);
        let mut candidates = BTreeSet::new();
        for (field, occur, body) in &prepared {
            if let (Occur::Should | Occur::Must, Prepared::Term(term)) = (occur, body) {
                if let Some(p) = self.fields.get(field).and_then(|fi| fi.postings.get(term)) {
                    candidates.extend(p.iter().map(|&(r, _)| r));
                }
            }
        }
        let mut hits: Vec<SearchHit> = candidates
            .into_iter()
            .filter_map(|r| {
                self.score_record(&prepared, r).map(|score| SearchHit {
                    record_title: self.records[r as usize].title.clone(),
                    score,
                })
            })
            .collect();
        hits.sort_by(|a, b| {
            b.score
                .partial_cmp(&a.score)
                .unwrap_or(Ordering::Equal)
                .then_with(|| a.record_title.cmp(&b.record_title))
        });
        hits.truncate(n);
        hits
    }

    pub fn save(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join("index.json");
        let file = std::fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
        serde_json::to_writer(std::io::BufWriter::new(file), self)?;
        Ok(())
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let path = dir.join("index.json");
        let file = std::fs::File::open(&path).map_err(|e| Error::io(&path, e))?;
        let mut index: Index = serde_json::from_reader(std::io::BufReader::new(file))?;
        index.by_title = index.records.iter().enumerate().map(|(i, r)| (r.title.clone(), i)).collect();
        Ok(index)
    }
}
