//! Knowledge records, the fielded inverted index over them, the query
//! language and classic TF-IDF scoring.

mod index;
mod query;
mod record;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use index::{Index, SearchHit};
pub use query::{parse_query, ClauseBody, FieldedQuery, Occur, QueryClause};
pub use record::{parse_dump, write_dump, KnowledgeRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldName {
    Contents,
    WikiTitle,
    Redirects,
    Types,
    Categories,
    LinkedConcepts,
    PageRank,
}

impl FieldName {
    pub const TEXT_FIELDS: [FieldName; 6] = [
        FieldName::Contents,
        FieldName::WikiTitle,
        FieldName::Redirects,
        FieldName::Types,
        FieldName::Categories,
        FieldName::LinkedConcepts,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FieldName::Contents => "contents",
            FieldName::WikiTitle => "wikiTitle",
            FieldName::Redirects => "redirects",
            FieldName::Types => "types",
            FieldName::Categories => "categories",
            FieldName::LinkedConcepts => "linkedConcepts",
            FieldName::PageRank => "pageRank",
        }
    }

    /// Fields whose term clauses contribute to the score; the rest only
    /// filter and count towards coordination.
    pub fn is_scored(self) -> bool {
        matches!(self, FieldName::Contents | FieldName::WikiTitle)
    }

    /// Entity types are keyword terms; every other text field is tokenized.
    pub fn is_keyword(self) -> bool {
        self == FieldName::Types
    }

    /// Normalises a query or index term for this field.
    pub fn normalize_term(self, term: &str) -> String {
        if self.is_keyword() {
            normalize_type(term)
        } else {
            term.trim_matches(crate::textproc::is_delimiter).to_lowercase()
        }
    }
}

impl fmt::Display for FieldName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FieldName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "contents" => FieldName::Contents,
            "wikiTitle" => FieldName::WikiTitle,
            "redirects" => FieldName::Redirects,
            "types" => FieldName::Types,
            "categories" => FieldName::Categories,
            "linkedConcepts" => FieldName::LinkedConcepts,
            "pageRank" => FieldName::PageRank,
            other => return Err(format!("unknown field {other:?}")),
        })
    }
}

/// `"Freebase: organization"` and `"Freebase:organization"` both become
/// `"freebase:organization"`.
pub fn normalize_type(raw: &str) -> String {
    let lower = raw.trim().to_lowercase();
    match lower.split_once(':') {
        Some((ns, name)) => format!("{}:{}", ns.trim_end(), name.trim_start()),
        None => lower,
    }
}
