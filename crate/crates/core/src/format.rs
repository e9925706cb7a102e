//! Plain-text edge lists.
//!
//! ```text
//! # comment
//! n m
//! u v w
//! ```
//!
//! The header gives the vertex and edge counts, then one line per edge. Weights
//! are integers, decimals or `p/q` fractions. Blank lines and anything after
//! `#` are ignored. Endpoints may come in either order.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::complete::DistanceMatrix;
use crate::graph::{Edge, SimpleGraph, WeightedGraph};
use crate::weight::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

struct Record {
    line: usize,
    u: usize,
    v: usize,
    weight: Option<Rational>,
}

/// Splits `text` into the header vertex count and edge records. The weight
/// column is mandatory when `weight_required`, optional otherwise.
fn records(text: &str, weight_required: bool) -> Result<(usize, Vec<Record>), ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| ParseError::new(1, "missing `n m` header"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(ParseError::new(header_line, "header must be `n m`"));
    }
    let n = parse_count(header_line, head[0], "vertex count")?;
    let m = parse_count(header_line, head[1], "edge count")?;

    let mut out = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, body) in lines {
        last_line = line;
        let tok: Vec<&str> = body.split_whitespace().collect();
        let ok_len = if weight_required {
            tok.len() == 3
        } else {
            tok.len() == 2 || tok.len() == 3
        };
        if !ok_len {
            let want = if weight_required { "`u v w`" } else { "`u v` or `u v w`" };
            return Err(ParseError::new(line, format!("expected {want}")));
        }
        let u = parse_count(line, tok[0], "vertex")?;
        let v = parse_count(line, tok[1], "vertex")?;
        let weight = match tok.get(2) {
            Some(w) => Some(parse_rational(w).ok_or_else(|| ParseError::new(line, format!("invalid weight `{w}`")))?),
            None => None,
        };
        out.push(Record { line, u, v, weight });
    }
    if out.len() != m {
        return Err(ParseError::new(
            last_line,
            format!("header promises {m} edges, found {}", out.len()),
        ));
    }
    Ok((n, out))
}

fn parse_count(line: usize, tok: &str, what: &str) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::new(line, format!("invalid {what} `{tok}`")))
}

/// Parses a weighted graph; every weight must be positive.
pub fn parse_graph(text: &str) -> Result<WeightedGraph, ParseError> {
    let (n, recs) = records(text, true)?;
    let mut g = WeightedGraph::new(n);
    for r in recs {
        g.add_edge(r.u, r.v, r.weight.expect("weight column required"))
            .map_err(|e| ParseError::new(r.line, e.to_string()))?;
    }
    Ok(g)
}

/// Canonical text: edges in lexicographic order, `u < v`, reduced weights.
pub fn emit_graph(g: &WeightedGraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (e, w) in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.low(), e.high(), format_rational(w));
    }
    out
}

/// Parses a complete graph whose weights may be zero, as a distance matrix.
pub fn parse_matrix(text: &str) -> Result<DistanceMatrix, ParseError> {
    let (n, recs) = records(text, true)?;
    let last = recs.last().map_or(1, |r| r.line);
    let mut pairs = Vec::with_capacity(recs.len());
    for r in recs {
        if r.u >= n || r.v >= n {
            return Err(ParseError::new(r.line, format!("vertex out of range for {n} vertices")));
        }
        pairs.push((r.u, r.v, r.weight.expect("weight column required")));
    }
    DistanceMatrix::from_pairs(n, pairs).map_err(|e| ParseError::new(last, e.to_string()))
}

/// Every off-diagonal pair of the matrix as an edge line, zeros included.
pub fn emit_matrix(d: &DistanceMatrix) -> String {
    let n = d.size();
    let mut out = format!("{} {}\n", n, n * n.saturating_sub(1) / 2);
    for (e, w) in d.pairs() {
        let _ = writeln!(out, "{} {} {}", e.low(), e.high(), format_rational(w));
    }
    out
}

/// Parses an unweighted graph. A third column, if present, is ignored.
pub fn parse_simple_graph(text: &str) -> Result<SimpleGraph, ParseError> {
    let (n, recs) = records(text, false)?;
    let mut seen = BTreeSet::new();
    for r in &recs {
        let err = |msg: String| ParseError::new(r.line, msg);
        if r.u >= n || r.v >= n {
            return Err(err(format!("vertex {} out of range for {n} vertices", r.u.max(r.v))));
        }
        if r.u == r.v {
            return Err(err(format!("self-loop at vertex {}", r.u)));
        }
        let e = Edge::new(r.u, r.v);
        if !seen.insert(e) {
            return Err(err(format!("duplicate edge {e}")));
        }
    }
    Ok(SimpleGraph::new(n, recs.iter().map(|r| (r.u, r.v))).expect("records validated"))
}

/// Canonical text for an unweighted graph.
pub fn emit_simple_graph(g: &SimpleGraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.low(), e.high());
    }
    out
}
