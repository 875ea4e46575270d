//! Line-oriented `.spg` text format.
//!
//! ```text
//! spg 1 q=<q>
//! v <id> <o|x>
//! e <circle-id> <cross-id> <label>
//! frontier <id> <label>
//! inf <id> <label>
//! # comment
//! ```
//!
//! Serialization is normalized: vertices sorted by id, edges sorted by
//! (circle, label), frontier and inf lines sorted. Parse then serialize is
//! byte-stable on normalized input.

use super::{Parity, RawComplex};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

fn token_column(line: &str, token_index: usize) -> usize {
    let mut col = 1;
    let mut seen = 0;
    let mut in_token = false;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            in_token = false;
        } else if !in_token {
            in_token = true;
            if seen == token_index {
                return i + 1;
            }
            seen += 1;
        }
        col = i + 2;
    }
    col
}

pub fn parse_spg(input: &str) -> Result<RawComplex, ParseError> {
    let mut raw = RawComplex::default();
    let mut header_seen = false;
    for (ln, line_raw) in input.lines().enumerate() {
        let ln = ln + 1;
        let line = match line_raw.split_once('#') {
            Some((before, _)) => before,
            None => line_raw,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if !header_seen {
            if tokens.len() != 3 || tokens[0] != "spg" || tokens[1] != "1" {
                return Err(err(ln, 1, "expected header `spg 1 q=<q>`"));
            }
            let q = tokens[2]
                .strip_prefix("q=")
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| err(ln, token_column(line, 2), "expected q=<integer>"))?;
            raw.q = q;
            header_seen = true;
            continue;
        }
        match tokens[0] {
            "v" => {
                if tokens.len() != 3 {
                    return Err(err(ln, 1, "expected `v <id> <o|x>`"));
                }
                let parity = match tokens[2] {
                    "o" => Parity::Circle,
                    "x" => Parity::Cross,
                    other => {
                        return Err(err(
                            ln,
                            token_column(line, 2),
                            format!("expected `o` or `x`, got {other:?}"),
                        ))
                    }
                };
                raw.vertices.push((tokens[1].to_string(), parity));
            }
            "e" => {
                if tokens.len() != 4 {
                    return Err(err(ln, 1, "expected `e <circle-id> <cross-id> <label>`"));
                }
                let label = tokens[3].parse::<usize>().map_err(|_| {
                    err(ln, token_column(line, 3), format!("bad label {:?}", tokens[3]))
                })?;
                raw.edges.push((tokens[1].to_string(), tokens[2].to_string(), label));
            }
            "frontier" | "inf" => {
                if tokens.len() != 3 {
                    return Err(err(ln, 1, format!("expected `{} <id> <label>`", tokens[0])));
                }
                let label = tokens[2].parse::<usize>().map_err(|_| {
                    err(ln, token_column(line, 2), format!("bad label {:?}", tokens[2]))
                })?;
                let entry = (tokens[1].to_string(), label);
                if tokens[0] == "frontier" {
                    raw.frontier.push(entry);
                } else {
                    raw.infinite_corners.push(entry);
                }
            }
            other => {
                return Err(err(ln, 1, format!("unknown directive {other:?}")));
            }
        }
    }
    if !header_seen {
        return Err(err(1, 1, "missing header `spg 1 q=<q>`"));
    }
    Ok(raw)
}

pub fn serialize_spg(raw: &RawComplex) -> String {
    let mut out = String::new();
    out.push_str(&format!("spg 1 q={}\n", raw.q));
    let mut vertices = raw.vertices.clone();
    vertices.sort();
    for (id, parity) in &vertices {
        out.push_str(&format!("v {id} {}\n", parity.symbol()));
    }
    let mut edges = raw.edges.clone();
    edges.sort_by(|a, b| (&a.0, a.2).cmp(&(&b.0, b.2)));
    for (c, x, l) in &edges {
        out.push_str(&format!("e {c} {x} {l}\n"));
    }
    let mut frontier = raw.frontier.clone();
    frontier.sort();
    for (id, l) in &frontier {
        out.push_str(&format!("frontier {id} {l}\n"));
    }
    let mut inf = raw.infinite_corners.clone();
    inf.sort();
    for (id, l) in &inf {
        out.push_str(&format!("inf {id} {l}\n"));
    }
    out
}
