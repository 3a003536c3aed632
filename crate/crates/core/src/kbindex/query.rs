use std::fmt;

use super::FieldName;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Occur {
    Should,
    Must,
    MustNot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClauseBody {
    Term(String),
    /// Inclusive on both ends.
    Range(u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryClause {
    pub field: FieldName,
    pub occur: Occur,
    pub body: ClauseBody,
}

impl QueryClause {
    pub fn term(field: FieldName, occur: Occur, term: impl Into<String>) -> Self {
        QueryClause {
            field,
            occur,
            body: ClauseBody::Term(term.into()),
        }
    }

    pub fn should(field: FieldName, term: impl Into<String>) -> Self {
        Self::term(field, Occur::Should, term)
    }

    pub fn page_rank(occur: Occur, lo: u32, hi: u32) -> Self {
        QueryClause {
            field: FieldName::PageRank,
            occur,
            body: ClauseBody::Range(lo, hi),
        }
    }
}

impl fmt::Display for QueryClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.occur {
            Occur::Should => {}
            Occur::Must => f.write_str("+")?,
            Occur::MustNot => f.write_str("-")?,
        }
        write!(f, "{}:", self.field)?;
        match &self.body {
            ClauseBody::Term(t) => f.write_str(t),
            ClauseBody::Range(lo, hi) => write!(f, "[{lo} TO {hi}]"),
        }
    }
}

/// A boolean combination of fielded clauses.
///
/// `Display` is the canonical serializer: clauses separated by one space.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FieldedQuery {
    pub clauses: Vec<QueryClause>,
}

impl FieldedQuery {
    pub fn new(clauses: Vec<QueryClause>) -> Self {
        FieldedQuery { clauses }
    }

    pub fn push(&mut self, clause: QueryClause) {
        self.clauses.push(clause);
    }

    /// At least one clause other than MustNot.
    pub fn is_scoreable(&self) -> bool {
        self.clauses.iter().any(|c| c.occur != Occur::MustNot)
    }
}

impl fmt::Display for FieldedQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn column(&self) -> usize {
        self.pos + 1
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn syntax(&self, column: usize, message: impl Into<String>) -> Error {
        Error::QuerySyntax {
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn take_until(&mut self, stop: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if stop(c) {
                break;
            }
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn clause(&mut self) -> Result<QueryClause> {
        let start = self.column();
        let occur = match self.peek() {
            Some('-') => {
                self.pos += 1;
                Occur::MustNot
            }
            Some('+') => {
                self.pos += 1;
                Occur::Must
            }
            _ => Occur::Should,
        };
        let field_col = self.column();
        let name = self.take_until(|c| c == ':' || c.is_whitespace());
        if self.peek() != Some(':') {
            return Err(self.syntax(start, format!("missing ':' after {name:?}")));
        }
        let field: FieldName = name.parse().map_err(|m| self.syntax(field_col, m))?;
        self.pos += 1;

        if self.peek() == Some('[') {
            let open = self.column();
            self.pos += 1;
            let inner = self.take_until(|c| c == ']');
            if self.peek() != Some(']') {
                return Err(self.syntax(open, "unterminated range"));
            }
            self.pos += 1;
            let parts: Vec<&str> = inner.split_whitespace().collect();
            let bounds = match parts.as_slice() {
                [lo, to, hi] if *to == "TO" => lo.parse::<u32>().ok().zip(hi.parse::<u32>().ok()),
                _ => None,
            };
            let (lo, hi) = bounds.ok_or_else(|| self.syntax(open, format!("malformed range [{inner}]")))?;
            if field != FieldName::PageRank {
                return Err(Error::QuerySemantic(format!("range on non-numeric field {field}")));
            }
            return Ok(QueryClause {
                field,
                occur,
                body: ClauseBody::Range(lo, hi),
            });
        }

        let term_col = self.column();
        let raw = self.take_until(char::is_whitespace);
        if field == FieldName::PageRank {
            let v = raw
                .parse::<u32>()
                .map_err(|_| Error::QuerySemantic(format!("pageRank needs a number or range, got {raw:?}")))?;
            return Ok(QueryClause {
                field,
                occur,
                body: ClauseBody::Range(v, v),
            });
        }
        let term = field.normalize_term(&raw);
        if term.is_empty() {
            return Err(self.syntax(term_col, format!("empty term for field {field}")));
        }
        Ok(QueryClause {
            field,
            occur,
            body: ClauseBody::Term(term),
        })
    }
}

/// Parses `clause+` where
/// `clause := ['-' | '+'] field ':' (term | '[' int 'TO' int ']')`.
/// Terms are lowercased and stripped of surrounding delimiters.
pub fn parse_query(text: &str) -> Result<FieldedQuery> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let mut q = FieldedQuery::default();
    loop {
        p.skip_ws();
        if p.peek().is_none() {
            break;
        }
        q.clauses.push(p.clause()?);
    }
    if q.clauses.is_empty() {
        return Err(Error::QuerySyntax {
            column: 1,
            message: "empty query".into(),
        });
    }
    Ok(q)
}
