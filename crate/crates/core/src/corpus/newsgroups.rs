use std::path::Path;

use log::warn;

use super::RawDocument;
use crate::{Error, Result};

#[derive(Debug, Clone, Default)]
pub struct NewsgroupsCorpus {
    pub documents: Vec<RawDocument>,
    /// Every category directory found, including empty ones.
    pub categories: Vec<String>,
    /// Files that could not be read.
    pub skipped: usize,
}

/// Drops the header block: everything up to and including the first blank
/// line. Text without a blank line is returned unchanged.
pub(crate) fn strip_header(text: &str) -> &str {
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        offset += line.len();
        if line.trim().is_empty() {
            return &text[offset..];
        }
    }
    text
}

/// Loads a two-level `root/<category>/<file>` tree. Directories and files are
/// visited in name order so the result is independent of filesystem order.
pub fn load_20newsgroups(root: &Path) -> Result<NewsgroupsCorpus> {
    let mut dirs: Vec<_> = std::fs::read_dir(root)
        .map_err(|e| Error::io(root, e))?
        .filter_map(|e| e.ok())
        .filter(|e| e.path().is_dir())
        .collect();
    dirs.sort_by_key(|e| e.file_name());

    let mut corpus = NewsgroupsCorpus::default();
    for dir in dirs {
        let category = dir.file_name().to_string_lossy().into_owned();
        let mut files: Vec<_> = match std::fs::read_dir(dir.path()) {
            Ok(rd) => rd.filter_map(|e| e.ok()).filter(|e| e.path().is_file()).collect(),
            Err(e) => {
                warn!("cannot list {}: {e}", dir.path().display());
                corpus.categories.push(category);
                continue;
            }
        };
        files.sort_by_key(|e| e.file_name());
        for file in files {
            let path = file.path();
            let bytes = match std::fs::read(&path) {
                Ok(b) => b,
                Err(e) => {
                    warn!("skipping unreadable {}: {e}", path.display());
                    corpus.skipped += 1;
                    continue;
                }
            };
            let text = String::from_utf8_lossy(&bytes);
            let name = file.file_name().to_string_lossy().into_owned();
            corpus
                .documents
                .push(RawDocument::new(format!("{category}/{name}"), strip_header(&text)).with_labels([category.clone()]));
        }
        corpus.categories.push(category);
    }
    Ok(corpus)
}
