use std::collections::HashMap;
use std::path::Path;

use super::Token;
use crate::{Error, Result};

/// Decides whether a token is a noun.
pub trait NounFilter: Send + Sync {
    fn is_noun(&self, token: &Token) -> bool;
}

const NOUN_SUFFIXES: [&str; 7] = ["tion", "ment", "ness", "ity", "er", "or", "ism"];

/// Lexicon lookup with a suffix and capitalisation fallback.
#[derive(Debug, Clone, Default)]
pub struct NounLexicon {
    entries: HashMap<String, bool>,
}

impl NounLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, word: &str, is_noun: bool) {
        self.entries.insert(word.to_lowercase(), is_noun);
    }

    /// One noun per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Self {
        let mut lex = NounLexicon::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            lex.insert(line, true);
        }
        lex
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::parse(&text))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl NounFilter for NounLexicon {
    fn is_noun(&self, token: &Token) -> bool {
        let lower = token.surface.to_lowercase();
        if let Some(&flag) = self.entries.get(&lower) {
            return flag;
        }
        let len = lower.chars().count();
        if NOUN_SUFFIXES.iter().any(|s| lower.ends_with(s) && len >= s.len() + 2) {
            return true;
        }
        token.position > 0 && token.surface.chars().next().is_some_and(char::is_uppercase)
    }
}

pub fn filter_nouns(tokens: &[Token], filter: &dyn NounFilter) -> Vec<Token> {
    tokens.iter().filter(|t| filter.is_noun(t)).cloned().collect()
}
