use std::collections::BTreeMap;

use super::{RawDocument, SplitHint};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetMode {
    /// The ten categories with the most training documents.
    TopTen,
    /// Every category with at least one training and one test document.
    AtLeastOneTrainOneTest,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategorySubset {
    pub mode: SubsetMode,
    /// Sorted lexicographically.
    pub categories: Vec<String>,
}

impl CategorySubset {
    pub fn contains(&self, category: &str) -> bool {
        self.categories.binary_search_by(|c| c.as_str().cmp(category)).is_ok()
    }
}

fn counts(docs: &[RawDocument]) -> BTreeMap<&str, (usize, usize, usize)> {
    let mut out: BTreeMap<&str, (usize, usize, usize)> = BTreeMap::new();
    for doc in docs {
        for label in &doc.labels {
            let e = out.entry(label.as_str()).or_default();
            match doc.split_hint {
                SplitHint::Train => e.0 += 1,
                SplitHint::Test => e.1 += 1,
                SplitHint::Unsplit => e.2 += 1,
            }
        }
    }
    out
}

/// The `n` categories with the most training documents, ties broken
/// lexicographically, returned in lexicographic order. When the corpus has
/// no training split at all every document counts as training.
pub fn top_categories(docs: &[RawDocument], n: usize) -> Result<Vec<String>> {
    let counts = counts(docs);
    let has_split = counts.values().any(|c| c.0 > 0);
    let mut ranked: Vec<(&str, usize)> = counts
        .iter()
        .map(|(name, c)| (*name, if has_split { c.0 } else { c.0 + c.1 + c.2 }))
        .filter(|&(_, c)| c > 0)
        .collect();
    if ranked.len() < n {
        return Err(Error::InvalidInput(format!(
            "requested top {n} categories but only {} have training documents",
            ranked.len()
        )));
    }
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let mut top: Vec<String> = ranked.into_iter().take(n).map(|(c, _)| c.to_string()).collect();
    top.sort();
    Ok(top)
}

pub fn select_category_subset(docs: &[RawDocument], mode: SubsetMode) -> Result<CategorySubset> {
    let categories = match mode {
        SubsetMode::TopTen => top_categories(docs, 10)?,
        SubsetMode::AtLeastOneTrainOneTest => counts(docs)
            .into_iter()
            .filter(|(_, c)| c.0 > 0 && c.1 > 0)
            .map(|(name, _)| name.to_string())
            .collect(),
    };
    Ok(CategorySubset { mode, categories })
}

/// Restricts every document's labels to `categories` and drops documents left
/// without a label.
pub fn admit(docs: &[RawDocument], categories: &[String]) -> Vec<RawDocument> {
    docs.iter()
        .filter_map(|d| {
            let labels: std::collections::BTreeSet<String> =
                d.labels.iter().filter(|l| categories.iter().any(|c| c == *l)).cloned().collect();
            (!labels.is_empty()).then(|| RawDocument { labels, ..d.clone() })
        })
        .collect()
}
