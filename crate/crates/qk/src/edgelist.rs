//! Plain-text edge lists.
//!
//! ```text
//! # comment
//! 3 2
//! 0 1
//! 1 2
//! ```
//!
//! The header gives the vertex and arc counts; each following line is one
//! arc. Lines starting with `#` and blank lines are skipped. Line numbers in
//! errors are 1-based.

use std::collections::HashSet;
use std::fmt::Write as _;

use qk_core::{Digraph, Vertex};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("malformed header {0:?}, expected \"n m\"")]
    BadHeader(String),
    #[error("malformed arc {0:?}, expected \"u v\"")]
    BadArc(String),
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate arc {0} {1}")]
    Duplicate(Vertex, Vertex),
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("header declares {declared} arcs, found {found}")]
    CountMismatch { declared: usize, found: usize },
}

fn two_numbers(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Some((a, b)),
        _ => None,
    }
}

pub fn parse(text: &str) -> Result<Digraph, ParseError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let Some((header_line, header)) = lines.next() else {
        return Err(ParseError { line: text.lines().count().max(1), kind: ParseErrorKind::MissingHeader });
    };
    let err = |line, kind| ParseError { line, kind };
    let (n, m) = two_numbers(header).ok_or_else(|| err(header_line, ParseErrorKind::BadHeader(header.into())))?;

    let mut arcs = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    for (line, body) in lines {
        let (u, v) = two_numbers(body).ok_or_else(|| err(line, ParseErrorKind::BadArc(body.into())))?;
        for vertex in [u, v] {
            if vertex >= n {
                return Err(err(line, ParseErrorKind::OutOfRange { vertex, n }));
            }
        }
        if u == v {
            return Err(err(line, ParseErrorKind::Loop(u)));
        }
        if !seen.insert((u, v)) {
            return Err(err(line, ParseErrorKind::Duplicate(u, v)));
        }
        arcs.push((u, v));
    }
    if arcs.len() != m {
        return Err(err(header_line, ParseErrorKind::CountMismatch { declared: m, found: arcs.len() }));
    }
    // every failure mode of `build` was ruled out above
    Ok(Digraph::build(n, &arcs).expect("validated arcs"))
}

/// Canonical form: header, then arcs in lexicographic order, LF endings.
pub fn emit(d: &Digraph) -> String {
    let mut out = format!("{} {}\n", d.n(), d.arc_count());
    for (u, v) in d.arcs() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Hex SHA-256 of the canonical edge list.
pub fn digest(d: &Digraph) -> String {
    hex::encode(Sha256::digest(emit(d).as_bytes()))
}
