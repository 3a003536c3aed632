use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One knowledge-base concept.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct KnowledgeRecord {
    pub title: String,
    pub redirects: Vec<String>,
    pub entity_types: Vec<String>,
    pub categories: Vec<String>,
    pub linked_concepts: Vec<String>,
    pub contents: String,
    pub page_rank: u32,
}

impl KnowledgeRecord {
    pub fn new(title: impl Into<String>, contents: impl Into<String>) -> Self {
        KnowledgeRecord {
            title: title.into(),
            contents: contents.into(),
            ..Default::default()
        }
    }
}

fn split_list(field: &str, line: usize, name: &str) -> Result<Vec<String>> {
    if field.is_empty() {
        return Ok(Vec::new());
    }
    field
        .split('|')
        .map(|item| {
            if item.is_empty() {
                Err(Error::Dump {
                    line,
                    message: format!("empty item in {name}"),
                })
            } else {
                Ok(item.to_string())
            }
        })
        .collect()
}

/// Parses the seven-column dump: title, page_rank, redirects, entity_types,
/// categories, linked_concepts, contents. List columns separate items with
/// `|`. Blank lines are skipped.
pub fn parse_dump(text: &str) -> Result<Vec<KnowledgeRecord>> {
    let mut records = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        if raw.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = raw.split('\t').collect();
        if cols.len() != 7 {
            return Err(Error::Dump {
                line,
                message: format!("expected 7 tab-separated fields, found {}", cols.len()),
            });
        }
        if cols[0].is_empty() {
            return Err(Error::Dump {
                line,
                message: "empty title".into(),
            });
        }
        let page_rank = cols[1].trim().parse::<u32>().map_err(|e| Error::Dump {
            line,
            message: format!("page_rank {:?}: {e}", cols[1]),
        })?;
        records.push(KnowledgeRecord {
            title: cols[0].to_string(),
            page_rank,
            redirects: split_list(cols[2], line, "redirects")?,
            entity_types: split_list(cols[3], line, "entity_types")?,
            categories: split_list(cols[4], line, "categories")?,
            linked_concepts: split_list(cols[5], line, "linked_concepts")?,
            contents: cols[6].to_string(),
        });
    }
    Ok(records)
}

pub fn write_dump(records: &[KnowledgeRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let cols = [
            r.title.clone(),
            r.page_rank.to_string(),
            r.redirects.join("|"),
            r.entity_types.join("|"),
            r.categories.join("|"),
            r.linked_concepts.join("|"),
            r.contents.clone(),
        ];
        out.push_str(&cols.join("\t"));
        out.push('\n');
    }
    out
}
