use std::collections::HashMap;
use std::path::Path;

use super::{tokenize, EntityTag, Token};
use crate::{Error, Result};

/// Assigns an entity tag to every token of a sequence.
pub trait EntityTagger: Send + Sync {
    fn tag(&self, tokens: &[Token]) -> Vec<(Token, EntityTag)>;
}

/// Multi-word surface forms mapped to entity kinds, matched greedily,
/// longest span first.
#[derive(Debug, Clone, Default)]
pub struct Gazetteer {
    entries: HashMap<Vec<String>, EntityTag>,
    max_len: usize,
}

fn key_of(surface: &str) -> Vec<String> {
    tokenize(surface).into_iter().map(|t| t.surface.to_lowercase()).collect()
}

impl Gazetteer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an entry; the surface is tokenized and lowercased, so
    /// `"Clayton E. Cramer"` matches the tokens `Clayton E Cramer`.
    pub fn insert(&mut self, surface: &str, kind: EntityTag) -> Result<()> {
        let key = key_of(surface);
        if key.is_empty() {
            return Err(Error::InvalidInput(format!("empty gazetteer surface {surface:?}")));
        }
        if self.entries.contains_key(&key) {
            return Err(Error::InvalidInput(format!("duplicate gazetteer surface {surface:?}")));
        }
        self.max_len = self.max_len.max(key.len());
        self.entries.insert(key, kind);
        Ok(())
    }

    pub fn get(&self, surface: &str) -> Option<EntityTag> {
        self.entries.get(&key_of(surface)).copied()
    }

    /// `surface<TAB>KIND` per line, KIND one of PERSON, LOCATION,
    /// ORGANIZATION. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut g = Gazetteer::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Resource {
                path: origin.to_path_buf(),
                line: n + 1,
                message,
            };
            let (surface, kind) = line.split_once('\t').ok_or_else(|| err("expected surface<TAB>KIND".into()))?;
            let kind: EntityTag = kind.parse().map_err(err)?;
            if kind == EntityTag::None {
                return Err(err("KIND must be PERSON, LOCATION or ORGANIZATION".into()));
            }
            g.insert(surface, kind).map_err(|e| err(e.to_string()))?;
        }
        Ok(g)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl EntityTagger for Gazetteer {
    fn tag(&self, tokens: &[Token]) -> Vec<(Token, EntityTag)> {
        let lower: Vec<String> = tokens.iter().map(|t| t.surface.to_lowercase()).collect();
        let mut tags = vec![EntityTag::None; tokens.len()];
        let mut i = 0;
        while i < tokens.len() {
            let longest = (1..=self.max_len.min(tokens.len() - i))
                .rev()
                .find_map(|len| self.entries.get(&lower[i..i + len]).map(|&kind| (len, kind)));
            match longest {
                Some((len, kind)) => {
                    tags[i..i + len].fill(kind);
                    i += len;
                }
                None => i += 1,
            }
        }
        tokens.iter().cloned().zip(tags).collect()
    }
}

pub fn tag_entities(tokens: &[Token], tagger: &dyn EntityTagger) -> Vec<(Token, EntityTag)> {
    tagger.tag(tokens)
}
