//! The `.dg` text format.
//!
//! ```text
//! # comment
//! 3        # vertex count
//! 0 1      # arc 0 -> 1
//! 1 2
//! ```
//!
//! Blank lines are skipped and `#` starts a comment anywhere on a line.
//! Repeated arcs and out-of-range endpoints are rejected.

use std::fmt::Write as _;

use thiserror::Error;

use crate::digraph::{Digraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number; 0 when the input ended early.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing vertex-count header")]
    MissingHeader,
    #[error("expected a vertex count, found {0:?}")]
    BadHeader(String),
    #[error("expected `u v`, found {0:?}")]
    BadArc(String),
    #[error("vertex {vertex} out of range for {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(Vertex, Vertex),
}

pub fn parse_digraph(text: &str) -> Result<Digraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(ParseError {
        line: 0,
        kind: ParseErrorKind::MissingHeader,
    })?;
    let n: usize = header.parse().map_err(|_| ParseError {
        line: header_line,
        kind: ParseErrorKind::BadHeader(header.to_owned()),
    })?;

    let mut seen = vec![false; n * n];
    let mut arcs = Vec::new();
    for (line, content) in lines {
        let err = |kind| ParseError { line, kind };
        let fields: Vec<&str> = content.split_whitespace().collect();
        let (u, v) = match fields.as_slice() {
            [u, v] => match (u.parse::<Vertex>(), v.parse::<Vertex>()) {
                (Ok(u), Ok(v)) => (u, v),
                _ => return Err(err(ParseErrorKind::BadArc(content.to_owned()))),
            },
            _ => return Err(err(ParseErrorKind::BadArc(content.to_owned()))),
        };
        for vertex in [u, v] {
            if vertex >= n {
                return Err(err(ParseErrorKind::OutOfRange { vertex, n }));
            }
        }
        if std::mem::replace(&mut seen[u * n + v], true) {
            return Err(err(ParseErrorKind::DuplicateArc(u, v)));
        }
        arcs.push((u, v));
    }
    Ok(Digraph::new(n, arcs).expect("arcs validated while parsing"))
}

pub fn format_digraph(d: &Digraph) -> String {
    let mut out = format!("{}\n", d.n());
    for (u, v) in d.arcs() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
