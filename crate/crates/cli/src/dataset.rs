//! Loading the configured corpus and its category list.

use std::collections::BTreeSet;
use std::path::Path;

use kbcat::corpus::{admit, load_20newsgroups, load_reuters_dir, select_category_subset, RawDocument, SplitHint, SubsetMode};
use kbcat::{Error, Result};

use crate::config::Dataset;

/// Documents to evaluate on and the categories scored.
#[derive(Debug, Clone)]
pub struct LoadedCorpus {
    pub docs: Vec<RawDocument>,
    pub categories: Vec<String>,
}

/// Parses the custom corpus format: one document per line,
/// `id<TAB>label|label<TAB>split<TAB>text`. The split is `train`, `test` or
/// empty; blank lines and `#` comments are skipped.
pub fn parse_custom_corpus(text: &str) -> Result<Vec<RawDocument>> {
    let mut docs = Vec::new();
    let mut seen = BTreeSet::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.splitn(4, '\t').collect();
        let [id, labels, split, body] = cols[..] else {
            return Err(Error::InvalidInput(format!(
                "corpus line {}: expected 4 tab-separated columns, got {}",
                n + 1,
                cols.len()
            )));
        };
        let hint =
            SplitHint::parse(split.trim()).ok_or_else(|| Error::InvalidInput(format!("corpus line {}: unknown split {split:?}", n + 1)))?;
        if !seen.insert(id.to_string()) {
            return Err(Error::InvalidInput(format!("corpus line {}: duplicate id {id:?}", n + 1)));
        }
        let labels = labels.split('|').map(str::trim).filter(|l| !l.is_empty());
        docs.push(RawDocument::new(id, body).with_labels(labels).with_split(hint));
    }
    Ok(docs)
}

fn label_union(docs: &[RawDocument]) -> Vec<String> {
    docs.iter()
        .flat_map(|d| d.labels.iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

pub fn load_corpus(dataset: Dataset, path: &Path) -> Result<LoadedCorpus> {
    match dataset {
        Dataset::Reuters10 | Dataset::Reuters90 => {
            let docs: Vec<RawDocument> = load_reuters_dir(path)?
                .into_iter()
                .filter(|d| d.split_hint != SplitHint::Unsplit)
                .collect();
            let mode = if dataset == Dataset::Reuters10 {
                SubsetMode::TopTen
            } else {
                SubsetMode::AtLeastOneTrainOneTest
            };
            let subset = select_category_subset(&docs, mode)?;
            Ok(LoadedCorpus {
                docs: admit(&docs, &subset.categories),
                categories: subset.categories,
            })
        }
        Dataset::News20 => {
            let corpus = load_20newsgroups(path)?;
            let categories = label_union(&corpus.documents);
            Ok(LoadedCorpus {
                docs: corpus.documents,
                categories,
            })
        }
        Dataset::Custom => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.to_path_buf(),
                source: e,
            })?;
            let docs = parse_custom_corpus(&text)?;
            let categories = label_union(&docs);
            Ok(LoadedCorpus { docs, categories })
        }
    }
}
