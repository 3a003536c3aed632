//! Benchmark corpora: loading, category subsets and cross-validation folds.

mod folds;
mod newsgroups;
mod reuters;
mod subset;

use std::collections::BTreeSet;

pub use folds::{make_folds, FoldAssignment};
pub use newsgroups::{load_20newsgroups, NewsgroupsCorpus};
pub use reuters::{load_reuters_dir, load_reuters_sgml, write_reuters_sgml};
pub use subset::{admit, select_category_subset, top_categories, CategorySubset, SubsetMode};

/// Which side of a fixed split a document belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitHint {
    Train,
    Test,
    Unsplit,
}

impl SplitHint {
    pub fn as_str(self) -> &'static str {
        match self {
            SplitHint::Train => "train",
            SplitHint::Test => "test",
            SplitHint::Unsplit => "unsplit",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "train" => Some(SplitHint::Train),
            "test" => Some(SplitHint::Test),
            "unsplit" | "" => Some(SplitHint::Unsplit),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    pub id: String,
    pub title: String,
    pub body: String,
    pub labels: BTreeSet<String>,
    pub split_hint: SplitHint,
}

impl RawDocument {
    pub fn new(id: impl Into<String>, body: impl Into<String>) -> Self {
        RawDocument {
            id: id.into(),
            title: String::new(),
            body: body.into(),
            labels: BTreeSet::new(),
            split_hint: SplitHint::Unsplit,
        }
    }

    pub fn with_labels<I, S>(mut self, labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.labels = labels.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_split(mut self, hint: SplitHint) -> Self {
        self.split_hint = hint;
        self
    }

    /// Text the representations are built from: the title (when present)
    /// followed by the body. A document with an empty body is title-only.
    pub fn text(&self) -> String {
        match (self.title.is_empty(), self.body.is_empty()) {
            (true, _) => self.body.clone(),
            (false, true) => self.title.clone(),
            (false, false) => format!("{}\n{}", self.title, self.body),
        }
    }

    /// Stratification key: the lexicographically smallest label.
    pub fn stratum(&self) -> Option<&str> {
        self.labels.iter().next().map(String::as_str)
    }
}
