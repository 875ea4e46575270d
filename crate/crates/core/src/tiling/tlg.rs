//! Line-oriented `.tlg` text format.
//!
//! ```text
//! vertex <id> <total-angle|inf>
//! tri <id> <v1> <v2> <v3> <ang1> <ang2> <ang3> <len12> <len23> <len31> k=<k> [omega=<w>]
//! cluster <cid> <tri-id>...
//! # comment
//! ```
//!
//! Angles in radians, decimal. Floats serialize via the shortest
//! round-tripping representation, so parse-serialize is stable.

use super::{RawTiling, RawTriangle, TotalAngle};
use crate::line_complex::ParseError;

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column: 1, message: message.into() }
}

fn parse_f64(tok: &str, line: usize, what: &str) -> Result<f64, ParseError> {
    tok.parse::<f64>().map_err(|_| err(line, format!("bad {what}: {tok:?}")))
}

pub fn parse_tlg(input: &str) -> Result<RawTiling, ParseError> {
    let mut raw = RawTiling::default();
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
        match tokens[0] {
            "vertex" => {
                if tokens.len() != 3 {
                    return Err(err(ln, "expected `vertex <id> <total-angle|inf>`"));
                }
                let total = if tokens[2] == "inf" {
                    TotalAngle::Infinite
                } else {
                    TotalAngle::Finite(parse_f64(tokens[2], ln, "total angle")?)
                };
                raw.vertices.push((tokens[1].to_string(), total));
            }
            "tri" => {
                if tokens.len() < 12 || tokens.len() > 13 {
                    return Err(err(
                        ln,
                        "expected `tri <id> <v1> <v2> <v3> <3 angles> <3 lengths> k=<k> [omega=<w>]`",
                    ));
                }
                let angles = [
                    parse_f64(tokens[5], ln, "angle")?,
                    parse_f64(tokens[6], ln, "angle")?,
                    parse_f64(tokens[7], ln, "angle")?,
                ];
                let sides = [
                    parse_f64(tokens[8], ln, "length")?,
                    parse_f64(tokens[9], ln, "length")?,
                    parse_f64(tokens[10], ln, "length")?,
                ];
                let k = tokens[11]
                    .strip_prefix("k=")
                    .ok_or_else(|| err(ln, "expected k=<value>"))
                    .and_then(|s| parse_f64(s, ln, "curvature"))?;
                let omega = match tokens.get(12) {
                    Some(tok) => Some(
                        tok.strip_prefix("omega=")
                            .ok_or_else(|| err(ln, "expected omega=<value>"))
                            .and_then(|s| parse_f64(s, ln, "omega"))?,
                    ),
                    None => None,
                };
                raw.triangles.push(RawTriangle {
                    id: tokens[1].to_string(),
                    vertices: [
                        tokens[2].to_string(),
                        tokens[3].to_string(),
                        tokens[4].to_string(),
                    ],
                    angles,
                    sides,
                    k,
                    omega,
                    left_turns: [0.0; 3],
                });
            }
            "cluster" => {
                if tokens.len() < 3 {
                    return Err(err(ln, "expected `cluster <cid> <tri-id>...`"));
                }
                raw.clusters.push((
                    tokens[1].to_string(),
                    tokens[2..].iter().map(|s| s.to_string()).collect(),
                ));
            }
            other => return Err(err(ln, format!("unknown directive {other:?}"))),
        }
    }
    Ok(raw)
}

pub fn serialize_tlg(raw: &RawTiling) -> String {
    let mut out = String::new();
    let mut vertices = raw.vertices.clone();
    vertices.sort_by(|a, b| a.0.cmp(&b.0));
    for (id, total) in &vertices {
        match total {
            TotalAngle::Finite(t) => out.push_str(&format!("vertex {id} {t}\n")),
            TotalAngle::Infinite => out.push_str(&format!("vertex {id} inf\n")),
        }
    }
    let mut triangles = raw.triangles.clone();
    triangles.sort_by(|a, b| a.id.cmp(&b.id));
    for t in &triangles {
        out.push_str(&format!(
            "tri {} {} {} {} {} {} {} {} {} {} k={}",
            t.id,
            t.vertices[0],
            t.vertices[1],
            t.vertices[2],
            t.angles[0],
            t.angles[1],
            t.angles[2],
            t.sides[0],
            t.sides[1],
            t.sides[2],
            t.k
        ));
        if let Some(w) = t.omega {
            out.push_str(&format!(" omega={w}"));
        }
        out.push('\n');
    }
    let mut clusters = raw.clusters.clone();
    clusters.sort_by(|a, b| a.0.cmp(&b.0));
    for (cid, members) in &clusters {
        out.push_str(&format!("cluster {cid}"));
        let mut members = members.clone();
        members.sort();
        for m in &members {
            out.push(' ');
            out.push_str(m);
        }
        out.push('\n');
    }
    out
}
