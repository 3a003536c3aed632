//! Vocabulary fitting and TF-IDF vectors.
//!
//! Text tokens become lowercased Porter stems; knowledge tokens appended by
//! enrichment are only lowercased so multi-word concepts such as
//! `kaiser_permanente` survive intact. Weights are `tf · (ln((1+N)/(1+df)) + 1)`
//! followed by L2 normalisation.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::path::Path;

use crate::textproc::{porter_stem, Origin, TaggedDocument, Token};
use crate::{Error, Result, Scalar};

/// The feature term for a token.
pub fn feature_term(token: &Token) -> String {
    let lower = token.surface.to_lowercase();
    match token.origin {
        Origin::Text => porter_stem(&lower),
        Origin::Knowledge => lower,
    }
}

pub fn feature_terms(doc: &TaggedDocument) -> impl Iterator<Item = String> + '_ {
    doc.tokens.iter().map(|(t, _)| feature_term(t))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    terms: Vec<String>,
    df: Vec<usize>,
    n_docs: usize,
    lookup: HashMap<String, usize>,
}

impl Vocabulary {
    fn from_counts(counts: BTreeMap<String, usize>, n_docs: usize) -> Self {
        let (terms, df): (Vec<String>, Vec<usize>) = counts.into_iter().unzip();
        let lookup = terms.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Vocabulary { terms, df, n_docs, lookup }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.lookup.get(term).copied()
    }

    pub fn term(&self, index: usize) -> Option<&str> {
        self.terms.get(index).map(String::as_str)
    }

    pub fn df(&self, term: &str) -> usize {
        self.index_of(term).map_or(0, |i| self.df[i])
    }

    /// Smoothed inverse document frequency of the term at `index`.
    pub fn idf<F: Scalar>(&self, index: usize) -> F {
        let n = F::from_count(self.n_docs);
        let df = F::from_count(self.df[index]);
        ((F::one() + n) / (F::one() + df)).ln() + F::one()
    }

    /// `term<TAB>index<TAB>df` per line, in index order.
    pub fn write_tsv(&self, mut out: impl Write) -> std::io::Result<()> {
        for (i, (t, df)) in self.terms.iter().zip(&self.df).enumerate() {
            writeln!(out, "{t}\t{i}\t{df}")?;
        }
        Ok(())
    }

    pub fn save_tsv(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_tsv(std::io::BufWriter::new(file)).map_err(|e| Error::io(path, e))
    }
}

/// Builds the vocabulary of `docs`. Indices follow lexicographic term order.
pub fn fit_vocabulary(docs: &[TaggedDocument]) -> Result<Vocabulary> {
    fit_vocabulary_iter(docs.iter())
}

pub fn fit_vocabulary_iter<'a>(docs: impl IntoIterator<Item = &'a TaggedDocument>) -> Result<Vocabulary> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut n_docs = 0;
    for doc in docs {
        n_docs += 1;
        let mut seen: Vec<String> = feature_terms(doc).collect();
        seen.sort_unstable();
        seen.dedup();
        for t in seen {
            *counts.entry(t).or_default() += 1;
        }
    }
    if n_docs == 0 {
        return Err(Error::InvalidInput("cannot fit a vocabulary on an empty corpus".into()));
    }
    Ok(Vocabulary::from_counts(counts, n_docs))
}

/// Sparse vector with strictly increasing indices.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseVector<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Scalar> SparseVector<F> {
    /// Sorts by index; fails on a repeated index or a non-finite weight.
    pub fn from_pairs(mut entries: Vec<(usize, F)>) -> Result<Self> {
        entries.sort_by_key(|&(i, _)| i);
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidInput("repeated index in sparse vector".into()));
        }
        if entries.iter().any(|(_, w)| !w.is_finite()) {
            return Err(Error::InvalidInput("non-finite weight in sparse vector".into()));
        }
        Ok(SparseVector { entries })
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm(&self) -> F {
        self.entries.iter().map(|&(_, w)| w * w).sum::<F>().sqrt()
    }

    /// Dot product with a dense vector; indices beyond it contribute nothing.
    pub fn dot(&self, dense: &[F]) -> F {
        self.entries.iter().filter_map(|&(i, w)| dense.get(i).map(|&d| d * w)).sum()
    }

    pub fn get(&self, index: usize) -> F {
        self.entries
            .binary_search_by_key(&index, |&(i, _)| i)
            .map_or(F::zero(), |p| self.entries[p].1)
    }
}

/// TF-IDF vector of `doc`, L2-normalised. Terms outside the vocabulary are
/// dropped; a document with none left maps to the zero vector.
pub fn vectorize<F: Scalar>(doc: &TaggedDocument, vocab: &Vocabulary) -> SparseVector<F> {
    let mut tf: BTreeMap<usize, usize> = BTreeMap::new();
    for term in feature_terms(doc) {
        if let Some(i) = vocab.index_of(&term) {
            *tf.entry(i).or_default() += 1;
        }
    }
    let mut entries: Vec<(usize, F)> = tf.into_iter().map(|(i, n)| (i, F::from_count(n) * vocab.idf::<F>(i))).collect();
    let norm = entries.iter().map(|&(_, w)| w * w).sum::<F>().sqrt();
    if norm > F::zero() {
        for (_, w) in &mut entries {
            *w = *w / norm;
        }
    }
    SparseVector { entries }
}
