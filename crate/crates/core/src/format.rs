//! Text format for graphs and trees.
//!
//! The interchange format is a header line `n m` followed by `m` lines
//! `u v` with `0 <= u < v < n`, one edge per line. A single-line variant
//! packs the same tokens onto one line. Lines starting with `#` are
//! comments and are ignored, so emitters may attach metadata (seed,
//! generator, tolerances) without breaking round-trips.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty input: expected a header line `n m`")]
    Empty,
    #[error("bad token {token:?}: expected a non-negative integer")]
    BadToken { token: String },
    #[error("expected {expected} tokens ({detail}), found {actual}")]
    WrongTokenCount {
        expected: usize,
        actual: usize,
        detail: &'static str,
    },
    #[error("edge {index}: endpoints must satisfy u < v, got {u} {v}")]
    EdgeOrder { index: usize, u: usize, v: usize },
    #[error("edge {index}: vertex {v} out of range for n = {n}")]
    VertexOutOfRange { index: usize, v: usize, n: usize },
}

/// Parse the text format (multi-line or single-line; `#` comments allowed).
/// Returns the vertex count and the edge list exactly as given.
pub fn parse_graph(input: &str) -> Result<(usize, Vec<(usize, usize)>), FormatError> {
    let mut tokens = Vec::new();
    for line in input.lines() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        for tok in line.split_whitespace() {
            tokens.push(tok);
        }
    }
    if tokens.is_empty() {
        return Err(FormatError::Empty);
    }
    let parse = |tok: &str| -> Result<usize, FormatError> {
        tok.parse().map_err(|_| FormatError::BadToken {
            token: tok.to_string(),
        })
    };
    let n = parse(tokens[0])?;
    if tokens.len() < 2 {
        return Err(FormatError::WrongTokenCount {
            expected: 2,
            actual: 1,
            detail: "header `n m`",
        });
    }
    let m = parse(tokens[1])?;
    let expected = 2 + 2 * m;
    if tokens.len() != expected {
        return Err(FormatError::WrongTokenCount {
            expected,
            actual: tokens.len(),
            detail: "header plus two tokens per edge",
        });
    }
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let u = parse(tokens[2 + 2 * i])?;
        let v = parse(tokens[3 + 2 * i])?;
        if u >= v {
            return Err(FormatError::EdgeOrder { index: i, u, v });
        }
        if v >= n {
            return Err(FormatError::VertexOutOfRange { index: i, v, n });
        }
        edges.push((u, v));
    }
    Ok((n, edges))
}

/// Multi-line rendering: `n m` header, one `u v` line per edge.
pub fn render_graph(n: usize, edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", n, edges.len());
    for &(u, v) in edges {
        debug_assert!(u < v && v < n);
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Single-line rendering: header and edges separated by double spaces.
pub fn render_graph_line(n: usize, edges: &[(usize, usize)]) -> String {
    let mut out = format!("{} {}", n, edges.len());
    for &(u, v) in edges {
        debug_assert!(u < v && v < n);
        let _ = write!(out, "  {u} {v}");
    }
    out
}
