//! Partition exchange format `.gpt`: one `piece <id> <vertex-id>...` line per
//! piece. Vertex ids refer to the accompanying `.spg` complex.

use super::{GraphPartition, SubgraphHandle};
use crate::line_complex::{LineComplex, ParseError};
use std::collections::BTreeSet;

pub fn parse_gpt(input: &str, complex: &LineComplex) -> Result<GraphPartition, ParseError> {
    let mut pieces = Vec::new();
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
        if tokens[0] != "piece" || tokens.len() < 3 {
            return Err(ParseError {
                line: ln,
                column: 1,
                message: "expected `piece <id> <vertex-id>...`".into(),
            });
        }
        let mut vertices = BTreeSet::new();
        for id in &tokens[2..] {
            let v = complex.index_of(id).ok_or_else(|| ParseError {
                line: ln,
                column: 1,
                message: format!("unknown vertex {id:?}"),
            })?;
            vertices.insert(v);
        }
        let infinite = vertices.iter().any(|&v| complex.is_frontier_vertex(v));
        pieces.push(SubgraphHandle { vertices, infinite });
    }
    Ok(GraphPartition { pieces })
}

pub fn serialize_gpt(partition: &GraphPartition, complex: &LineComplex) -> String {
    let mut out = String::new();
    for (i, piece) in partition.pieces.iter().enumerate() {
        out.push_str(&format!("piece {i}"));
        for &v in &piece.vertices {
            out.push(' ');
            out.push_str(complex.id_of(v));
        }
        out.push('\n');
    }
    out
}
