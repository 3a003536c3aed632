//! Reuters-21578 (Distribution 1.0) SGML reader and writer.
//!
//! The reader is a small tag scanner over raw bytes, so reported offsets are
//! byte offsets into the input. Only the parts of the DTD the experiments use
//! are interpreted: the `REUTERS` attributes, `TOPICS/D`, `TITLE`, `BODY` and
//! the untagged text of `TEXT TYPE="UNPROC"` documents.

use std::collections::{BTreeSet, HashSet};
use std::path::Path;

use log::warn;

use super::{RawDocument, SplitHint};
use crate::{Error, Result};

#[derive(Debug)]
enum Event<'a> {
    Start {
        name: String,
        attrs: Vec<(String, String)>,
        offset: usize,
    },
    End {
        name: String,
        offset: usize,
    },
    Text(&'a [u8]),
}

/// Name, attributes, end offset.
type StartTag = (String, Vec<(String, String)>, usize);

struct Scanner<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(input: &'a [u8]) -> Self {
        Scanner { input, pos: 0 }
    }

    fn err(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Sgml {
            offset,
            message: message.into(),
        }
    }

    fn next_event(&mut self) -> Result<Option<Event<'a>>> {
        loop {
            if self.pos >= self.input.len() {
                return Ok(None);
            }
            let start = self.pos;
            if self.input[start] != b'<' || !self.is_markup(start) {
                let end = self.input[start + 1..]
                    .iter()
                    .enumerate()
                    .find(|&(i, &b)| b == b'<' && self.is_markup(start + 1 + i))
                    .map(|(i, _)| start + 1 + i)
                    .unwrap_or(self.input.len());
                self.pos = end;
                return Ok(Some(Event::Text(&self.input[start..end])));
            }
            match self.input.get(start + 1) {
                Some(b'!') | Some(b'?') => {
                    // declarations and comments
                    let close = self.find_byte(b'>', start)?;
                    self.pos = close + 1;
                    continue;
                }
                Some(b'/') => {
                    let close = self.find_byte(b'>', start)?;
                    let name = std::str::from_utf8(&self.input[start + 2..close])
                        .map_err(|_| self.err(start, "non-ASCII end tag"))?
                        .trim()
                        .to_ascii_uppercase();
                    if name.is_empty() {
                        return Err(self.err(start, "empty end tag"));
                    }
                    self.pos = close + 1;
                    return Ok(Some(Event::End { name, offset: start }));
                }
                _ => {
                    let (name, attrs, close) = self.parse_start_tag(start)?;
                    self.pos = close + 1;
                    return Ok(Some(Event::Start {
                        name,
                        attrs,
                        offset: start,
                    }));
                }
            }
        }
    }

    /// A `<` opens markup only when followed by a letter, `/`, `!` or `?`.
    fn is_markup(&self, at: usize) -> bool {
        matches!(self.input.get(at + 1), Some(b) if b.is_ascii_alphabetic() || matches!(b, b'/' | b'!' | b'?'))
    }

    fn find_byte(&self, needle: u8, from: usize) -> Result<usize> {
        self.input[from..]
            .iter()
            .position(|&b| b == needle)
            .map(|p| from + p)
            .ok_or_else(|| self.err(from, "unterminated tag"))
    }

    /// Tag name, attributes and the offset just past `>`.
    fn parse_start_tag(&self, start: usize) -> Result<StartTag> {
        let bytes = self.input;
        let mut i = start + 1;
        while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'-' || bytes[i] == b'_') {
            i += 1;
        }
        let name = String::from_utf8_lossy(&bytes[start + 1..i]).to_ascii_uppercase();
        let mut attrs = Vec::new();
        loop {
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            match bytes.get(i) {
                None => return Err(self.err(start, format!("unterminated start tag <{name}"))),
                Some(b'>') => return Ok((name, attrs, i)),
                Some(b'/') if bytes.get(i + 1) == Some(&b'>') => return Err(self.err(i, format!("self-closing tag <{name}/> not allowed"))),
                Some(_) => {}
            }
            let key_start = i;
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'=' && bytes[i] != b'>' {
                i += 1;
            }
            let key = String::from_utf8_lossy(&bytes[key_start..i]).to_ascii_uppercase();
            if bytes.get(i) != Some(&b'=') {
                attrs.push((key, String::new()));
                continue;
            }
            i += 1;
            let value = match bytes.get(i) {
                Some(&q) if q == b'"' || q == b'\'' => {
                    let close = bytes[i + 1..]
                        .iter()
                        .position(|&b| b == q)
                        .map(|p| i + 1 + p)
                        .ok_or_else(|| self.err(i, "unterminated attribute value"))?;
                    let v = String::from_utf8_lossy(&bytes[i + 1..close]).into_owned();
                    i = close + 1;
                    v
                }
                _ => {
                    let v_start = i;
                    while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'>' {
                        i += 1;
                    }
                    String::from_utf8_lossy(&bytes[v_start..i]).into_owned()
                }
            };
            attrs.push((key, value));
        }
    }
}

/// Decodes `&lt; &gt; &amp; &quot; &#NN;`. Anything else that looks like an
/// entity is kept verbatim and reported.
fn decode_entities(raw: &[u8], base_offset: usize) -> String {
    let text = String::from_utf8_lossy(raw);
    if !text.contains('&') {
        return text.into_owned();
    }
    let mut out = String::with_capacity(text.len());
    let mut rest: &str = &text;
    let mut consumed = 0usize;
    while let Some(amp) = rest.find('&') {
        out.push_str(&rest[..amp]);
        let tail = &rest[amp..];
        let entity_len = tail[1..].char_indices().take(12).find(|&(_, c)| c == ';').map(|(i, _)| i + 2);
        let decoded = entity_len.and_then(|len| {
            let name = &tail[1..len - 1];
            let ch = match name {
                "lt" => Some('<'),
                "gt" => Some('>'),
                "amp" => Some('&'),
                "quot" => Some('"'),
                _ => name.strip_prefix('#').and_then(|n| n.parse::<u32>().ok()).and_then(char::from_u32),
            };
            ch.map(|c| (c, len))
        });
        match decoded {
            Some((c, len)) => {
                out.push(c);
                rest = &tail[len..];
                consumed += amp + len;
            }
            None => {
                if let Some(len) = entity_len {
                    let name = &tail[1..len - 1];
                    if !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '#') {
                        warn!(
                            "unknown SGML entity &{name}; near byte {} kept verbatim",
                            base_offset + consumed + amp
                        );
                    }
                }
                out.push('&');
                rest = &tail[1..];
                consumed += amp + 1;
            }
        }
    }
    out.push_str(rest);
    out
}

#[derive(Default)]
struct DocBuilder {
    id: Option<String>,
    lewis_split: String,
    topics_attr: String,
    offset: usize,
    labels: BTreeSet<String>,
    title: String,
    body: Option<String>,
    unproc: String,
}

impl DocBuilder {
    fn finish(self) -> Result<RawDocument> {
        let id = self.id.ok_or(Error::Sgml {
            offset: self.offset,
            message: "REUTERS element without NEWID".into(),
        })?;
        let split_hint = match (self.lewis_split.as_str(), self.topics_attr.as_str()) {
            ("TRAIN", "YES") => SplitHint::Train,
            ("TEST", "YES") => SplitHint::Test,
            _ => SplitHint::Unsplit,
        };
        let body = match self.body {
            Some(b) => b,
            None if self.title.is_empty() => self.unproc,
            None => String::new(),
        };
        Ok(RawDocument {
            id,
            title: self.title,
            body,
            labels: self.labels,
            split_hint,
        })
    }
}

/// Parses one Reuters-21578 SGML stream into documents, in input order.
pub fn load_reuters_sgml(bytes: &[u8]) -> Result<Vec<RawDocument>> {
    let mut scanner = Scanner::new(bytes);
    let mut stack: Vec<(String, usize)> = Vec::new();
    let mut current: Option<DocBuilder> = None;
    let mut docs = Vec::new();
    let mut seen = HashSet::new();

    while let Some(event) = scanner.next_event()? {
        match event {
            Event::Start { name, attrs, offset } => {
                if name == "REUTERS" {
                    if current.is_some() {
                        return Err(scanner.err(offset, "nested <REUTERS> element"));
                    }
                    let mut b = DocBuilder {
                        offset,
                        ..Default::default()
                    };
                    for (k, v) in attrs {
                        match k.as_str() {
                            "NEWID" => b.id = Some(v),
                            "LEWISSPLIT" => b.lewis_split = v.to_ascii_uppercase(),
                            "TOPICS" => b.topics_attr = v.to_ascii_uppercase(),
                            _ => {}
                        }
                    }
                    current = Some(b);
                } else if name == "BODY" {
                    if let Some(b) = current.as_mut() {
                        b.body.get_or_insert_with(String::new);
                    }
                }
                stack.push((name, offset));
            }
            Event::End { name, offset } => match stack.pop() {
                Some((open, _)) if open == name => {
                    if name == "REUTERS" {
                        let doc = current.take().expect("builder exists inside REUTERS").finish()?;
                        if !seen.insert(doc.id.clone()) {
                            return Err(scanner.err(offset, format!("duplicate NEWID {}", doc.id)));
                        }
                        docs.push(doc);
                    }
                }
                Some((open, _)) => return Err(scanner.err(offset, format!("mismatched end tag </{name}>, expected </{open}>"))),
                None => return Err(scanner.err(offset, format!("unexpected end tag </{name}>"))),
            },
            Event::Text(raw) => {
                let Some(b) = current.as_mut() else { continue };
                let top = stack.last().map(|(n, _)| n.as_str());
                let parent = stack.len().checked_sub(2).map(|i| stack[i].0.as_str());
                let text_offset = scanner.pos - raw.len();
                match (top, parent) {
                    (Some("D"), Some("TOPICS")) => {
                        let label = decode_entities(raw, text_offset);
                        let label = label.trim();
                        if !label.is_empty() {
                            b.labels.insert(label.to_string());
                        }
                    }
                    (Some("TITLE"), _) => b.title.push_str(&decode_entities(raw, text_offset)),
                    (Some("BODY"), _) => b.body.get_or_insert_with(String::new).push_str(&decode_entities(raw, text_offset)),
                    (Some("TEXT"), _) => b.unproc.push_str(&decode_entities(raw, text_offset)),
                    _ => {}
                }
            }
        }
    }
    if let Some((name, offset)) = stack.pop() {
        return Err(Error::Sgml {
            offset,
            message: format!("unclosed <{name}> at end of input"),
        });
    }
    Ok(docs)
}

/// Loads every `reut2-*.sgm` file of a directory, in file-name order.
pub fn load_reuters_dir(dir: &Path) -> Result<Vec<RawDocument>> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with("reut2-") && n.ends_with(".sgm"))
        })
        .collect();
    files.sort();
    let mut docs = Vec::new();
    let mut seen = HashSet::new();
    for path in files {
        let bytes = std::fs::read(&path).map_err(|e| Error::io(&path, e))?;
        for doc in load_reuters_sgml(&bytes)? {
            if !seen.insert(doc.id.clone()) {
                return Err(Error::InvalidInput(format!("duplicate NEWID {} in {}", doc.id, path.display())));
            }
            docs.push(doc);
        }
    }
    Ok(docs)
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            c => out.push(c),
        }
    }
    out
}

/// Serializes a document as a single `REUTERS` element that
/// [`load_reuters_sgml`] reads back to the same fields.
pub fn write_reuters_sgml(doc: &RawDocument) -> String {
    let (split, topics) = match doc.split_hint {
        SplitHint::Train => ("TRAIN", "YES"),
        SplitHint::Test => ("TEST", "YES"),
        SplitHint::Unsplit => ("NOT-USED", "NO"),
    };
    let mut out = format!(
        "<REUTERS TOPICS=\"{topics}\" LEWISSPLIT=\"{split}\" NEWID=\"{}\">\n<TOPICS>",
        doc.id.replace('"', "")
    );
    for label in &doc.labels {
        out.push_str("<D>");
        out.push_str(&escape(label));
        out.push_str("</D>");
    }
    out.push_str("</TOPICS>\n<TEXT>\n<TITLE>");
    out.push_str(&escape(&doc.title));
    out.push_str("</TITLE>\n<BODY>");
    out.push_str(&escape(&doc.body));
    out.push_str("</BODY></TEXT>\n</REUTERS>\n");
    out
}
