//! Text format for relations and ordered pair lists.
//!
//! One pair per line as `i j`; `node k` declares a node without pairs;
//! `#` starts a comment. Serialization lists bare nodes first, then pairs in
//! lexicographic order.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Node, Pair, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

enum Line {
    Blank,
    Node(Node),
    Pair(Pair),
}

fn parse_line(number: usize, raw: &str) -> Result<Line, ParseError> {
    let text = raw.split('#').next().unwrap_or("");
    let words: Vec<&str> = text.split_whitespace().collect();
    match words.as_slice() {
        [] => Ok(Line::Blank),
        ["node", k] => Ok(Line::Node(Node::new(k))),
        [i, j] => Ok(Line::Pair(Pair::new(*i, *j))),
        _ => Err(ParseError {
            line: number,
            message: format!("expected `i j` or `node k`, found `{}`", text.trim()),
        }),
    }
}

/// Parses a relation file.
pub fn parse_relation(text: &str) -> Result<Relation, ParseError> {
    let mut nodes = Vec::new();
    let mut pairs = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        match parse_line(n + 1, raw)? {
            Line::Blank => {}
            Line::Node(k) => nodes.push(k),
            Line::Pair(p) => pairs.push(p),
        }
    }
    Ok(Relation::new(nodes, pairs))
}

/// Parses pairs in file order; used for order files. Duplicates are rejected.
pub fn parse_pair_list(text: &str) -> Result<Vec<Pair>, ParseError> {
    let mut out: Vec<Pair> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        match parse_line(n + 1, raw)? {
            Line::Blank => {}
            Line::Node(_) => {
                return Err(ParseError {
                    line: n + 1,
                    message: "`node` lines are not allowed here".into(),
                })
            }
            Line::Pair(p) => {
                if out.contains(&p) {
                    return Err(ParseError {
                        line: n + 1,
                        message: format!("duplicate pair {p}"),
                    });
                }
                out.push(p);
            }
        }
    }
    Ok(out)
}

impl Relation {
    /// Deterministic serialization in the relation file format.
    pub fn to_text(&self) -> String {
        let span = self.span();
        let mut out = String::new();
        for n in self.nodes().filter(|n| !span.contains(*n)) {
            let _ = writeln!(out, "node {n}");
        }
        for p in self.pairs() {
            let _ = writeln!(out, "{} {}", p.src, p.dst);
        }
        out
    }
}
