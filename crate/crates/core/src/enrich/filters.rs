use crate::textproc::{is_delimiter, StopList};

/// Keeps a term whose first character is an uppercase letter and which
/// contains no digit.
pub fn filter_e4(term: &str) -> bool {
    match term.chars().next() {
        Some(first) if first.is_uppercase() => !term.chars().any(|c| c.is_numeric()),
        _ => false,
    }
}

/// Splits on every delimiter except `_`, drops stop-word pieces and joins the
/// rest with `_`. Returns `None` when nothing survives.
pub fn clean_term(term: &str, stoplist: &StopList) -> Option<String> {
    let pieces: Vec<&str> = term
        .split(|c: char| c != '_' && is_delimiter(c))
        .filter(|p| !p.is_empty() && !stoplist.contains(p))
        .collect();
    (!pieces.is_empty()).then(|| pieces.join("_"))
}

pub fn clean_e5(terms: &[String], stoplist: &StopList) -> Vec<String> {
    terms.iter().filter_map(|t| clean_term(t, stoplist)).collect()
}
