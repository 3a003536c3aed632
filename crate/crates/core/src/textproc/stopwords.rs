use std::collections::HashSet;
use std::path::Path;

use super::Token;
use crate::{Error, Result};

const SMART: &str = include_str!("../../data/smart_stoplist.txt");

/// Case-insensitive stop-word set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopList {
    words: HashSet<String>,
}

impl StopList {
    /// The bundled SMART list (570 words).
    pub fn smart() -> Self {
        Self::parse(SMART)
    }

    /// One word per line; blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Self {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::parse(&text))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl<S: AsRef<str>> FromIterator<S> for StopList {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        StopList {
            words: iter.into_iter().map(|w| w.as_ref().to_lowercase()).collect(),
        }
    }
}

pub fn remove_stopwords(tokens: &[Token], stoplist: &StopList) -> Vec<Token> {
    tokens.iter().filter(|t| !stoplist.contains(&t.surface)).cloned().collect()
}
