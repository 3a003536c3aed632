//! Token-level text processing and the four document representations.

mod nouns;
mod porter;
mod represent;
mod stopwords;
mod tagger;
mod tokenize;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use nouns::{filter_nouns, NounFilter, NounLexicon};
pub use porter::porter_stem;
pub use represent::{represent, Resources};
pub use stopwords::{remove_stopwords, StopList};
pub use tagger::{tag_entities, EntityTagger, Gazetteer};
pub use tokenize::{is_delimiter, tokenize};

/// Where a token came from. Knowledge tokens are appended by enrichment and
/// are never stemmed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Origin {
    #[default]
    Text,
    Knowledge,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub surface: String,
    pub position: usize,
    pub origin: Origin,
}

impl Token {
    pub fn new(surface: impl Into<String>, position: usize) -> Self {
        Token {
            surface: surface.into(),
            position,
            origin: Origin::Text,
        }
    }

    pub fn knowledge(surface: impl Into<String>, position: usize) -> Self {
        Token {
            surface: surface.into(),
            position,
            origin: Origin::Knowledge,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum EntityTag {
    #[default]
    None,
    Person,
    Location,
    Organization,
}

impl EntityTag {
    /// Entity-type term as stored in the knowledge base `types` field.
    pub fn freebase_type(self) -> Option<&'static str> {
        match self {
            EntityTag::None => None,
            EntityTag::Person => Some("freebase:person"),
            EntityTag::Location => Some("freebase:location"),
            EntityTag::Organization => Some("freebase:organization"),
        }
    }
}

impl FromStr for EntityTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "PERSON" => Ok(EntityTag::Person),
            "LOCATION" => Ok(EntityTag::Location),
            "ORGANIZATION" => Ok(EntityTag::Organization),
            "NONE" | "O" => Ok(EntityTag::None),
            other => Err(format!("unknown entity kind {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Representation {
    /// Stop words removed.
    T1,
    /// Entity-tagged, stop words kept.
    T2,
    /// T1 restricted to nouns.
    T3,
    /// T3 with entity tags.
    T4,
}

impl Representation {
    pub fn is_tagged(self) -> bool {
        matches!(self, Representation::T2 | Representation::T4)
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Representation::T1 => "T1",
            Representation::T2 => "T2",
            Representation::T3 => "T3",
            Representation::T4 => "T4",
        };
        f.write_str(s)
    }
}

impl FromStr for Representation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "T1" => Ok(Representation::T1),
            "T2" => Ok(Representation::T2),
            "T3" => Ok(Representation::T3),
            "T4" => Ok(Representation::T4),
            other => Err(format!("unknown representation {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedDocument {
    pub id: String,
    pub tokens: Vec<(Token, EntityTag)>,
    pub labels: BTreeSet<String>,
    pub representation: Representation,
}

impl TaggedDocument {
    pub fn surfaces(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(|(t, _)| t.surface.as_str())
    }

    pub fn text_tokens(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().map(|(t, _)| t).filter(|t| t.origin == Origin::Text)
    }

    pub fn tags(&self) -> impl Iterator<Item = EntityTag> + '_ {
        self.tokens.iter().map(|(_, tag)| *tag)
    }
}
