//! Connected-subgraph splitting and bounded-piece partitions over any
//! bounded-degree graph, plus the excess-sum certificate checkers. The same
//! machinery runs on line-complex vertices (degree q) and on triangle
//! adjacency graphs (degree 3).

mod certify;
mod gpt;

pub use certify::{certify_t2, certify_tfinal, Certificate, CertifyError, CertifyMode, Verdict};
pub use gpt::{parse_gpt, serialize_gpt};

use crate::line_complex::LineComplex;
use std::collections::{BTreeSet, VecDeque};
use thiserror::Error;

/// Bounded-degree adjacency structure the partition algorithms run on.
#[derive(Clone, Debug)]
pub struct AdjGraph {
    adj: Vec<Vec<usize>>,
    max_degree: usize,
    /// Vertices that stand in for an infinite continuation (they touch the
    /// frontier of a truncation).
    frontier: Vec<bool>,
}

impl AdjGraph {
    pub fn new(adj: Vec<Vec<usize>>, max_degree: usize, frontier: Vec<bool>) -> Self {
        assert_eq!(adj.len(), frontier.len());
        AdjGraph { adj, max_degree, frontier }
    }

    pub fn from_line_complex(complex: &LineComplex) -> Self {
        let n = complex.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for v in 0..n {
            let mut ns: Vec<usize> = complex.neighbors(v).collect();
            ns.sort_unstable();
            ns.dedup();
            adj[v] = ns;
        }
        let frontier = (0..n).map(|v| complex.is_frontier_vertex(v)).collect();
        AdjGraph { adj, max_degree: complex.q(), frontier }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn degree_bound(&self) -> usize {
        self.max_degree
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn touches_frontier(&self, v: usize) -> bool {
        self.frontier[v]
    }

    /// Is the induced subgraph on `set` connected? Empty sets count as
    /// connected.
    pub fn is_connected(&self, set: &BTreeSet<usize>) -> bool {
        let Some(&start) = set.iter().next() else { return true };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if set.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == set.len()
    }

    /// Connected components of the induced subgraph on `set`, each sorted;
    /// components ordered by smallest member.
    pub fn components(&self, set: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut remaining = set.clone();
        let mut out = Vec::new();
        while let Some(&start) = remaining.iter().next() {
            let mut comp = BTreeSet::from([start]);
            remaining.remove(&start);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if remaining.remove(&w) {
                        comp.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }
}

/// A connected subgraph, identified with its vertex set. `infinite` marks a
/// frontier-touching stand-in for an infinite component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphHandle {
    pub vertices: BTreeSet<usize>,
    pub infinite: bool,
}

impl SubgraphHandle {
    pub fn new(graph: &AdjGraph, vertices: BTreeSet<usize>) -> Self {
        let infinite = vertices.iter().any(|&v| graph.touches_frontier(v));
        SubgraphHandle { vertices, infinite }
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// A partition into disjoint connected pieces covering a vertex set.
#[derive(Clone, Debug)]
pub struct GraphPartition {
    pub pieces: Vec<SubgraphHandle>,
}

impl GraphPartition {
    /// Check disjointness, cover of `universe`, and per-piece connectivity.
    pub fn validate(&self, graph: &AdjGraph, universe: &BTreeSet<usize>) -> Result<(), String> {
        let mut seen = BTreeSet::new();
        for (i, piece) in self.pieces.iter().enumerate() {
            if piece.vertices.is_empty() {
                return Err(format!("piece {i} is empty"));
            }
            for &v in &piece.vertices {
                if !seen.insert(v) {
                    return Err(format!("vertex {v} appears in more than one piece"));
                }
            }
            if !graph.is_connected(&piece.vertices) {
                return Err(format!("piece {i} is not connected"));
            }
        }
        if &seen != universe {
            return Err("pieces do not cover the vertex set exactly".into());
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("subgraph too small: size {size} < required {required}")]
    TooSmall { size: usize, required: usize },
    #[error("subgraph is not connected")]
    NotConnected,
    #[error("splitting did not terminate within the step budget")]
    BudgetExceeded,
}

/// Split a finite connected subgraph with K >= 4q vertices into two disjoint
/// connected halves covering it, each of size >= K/(2q).
///
/// The working state grows a connected seed one vertex at a time while its
/// complement stays connected; when removing the grown seed disconnects the
/// rest, the largest remaining component is taken as one half. Smallest-index
/// choices make the output deterministic.
pub fn split_lemma_par(
    graph: &AdjGraph,
    sub: &BTreeSet<usize>,
) -> Result<(BTreeSet<usize>, BTreeSet<usize>), PartitionError> {
    let q = graph.degree_bound();
    let k_total = sub.len();
    if k_total < 4 * q {
        return Err(PartitionError::TooSmall { size: k_total, required: 4 * q });
    }
    if !graph.is_connected(sub) {
        return Err(PartitionError::NotConnected);
    }
    // size meets the real bound K/2q exactly when 2q*size >= K.
    let meets_bound = |size: usize| 2 * q * size >= k_total;

    let mut budget = 2 * k_total + 4;
    let first = *sub.iter().next().expect("nonempty");
    let mut seed: BTreeSet<usize> = BTreeSet::from([first]);

    loop {
        budget = budget.checked_sub(1).ok_or(PartitionError::BudgetExceeded)?;
        let rest: BTreeSet<usize> = sub.difference(&seed).copied().collect();
        if graph.is_connected(&rest) {
            if meets_bound(seed.len()) {
                return Ok((seed, rest));
            }
            // Grow by the smallest adjacent vertex.
            let grow = rest
                .iter()
                .copied()
                .find(|&v| graph.neighbors(v).iter().any(|w| seed.contains(w)))
                .expect("connected subgraph has an adjacent vertex");
            seed.insert(grow);
            continue;
        }
        // Removing the seed disconnected the rest. The components attach to
        // the last grown vertex; at most q of them, total size >= K/2.
        let comps = graph.components(&rest);
        debug_assert!(comps.len() <= q);
        let big = comps
            .iter()
            .find(|c| meets_bound(c.len()))
            .expect("some component meets the K/2q bound")
            .clone();
        let other: BTreeSet<usize> = sub.difference(&big).copied().collect();
        debug_assert!(graph.is_connected(&other));
        if meets_bound(other.len()) {
            return Ok((big, other));
        }
        // The complement of the big component is still too small; restart the
        // growth from it.
        seed = other;
    }
}

/// A piece produced by the bounded partition.
pub type Piece = SubgraphHandle;

/// Partition a connected subgraph into disjoint connected pieces: every
/// frontier-free piece has size in [M, 2qM^2]; frontier-touching components
/// are passed through whole with the `infinite` flag.
pub fn partition_lemma_par2(
    graph: &AdjGraph,
    sub: &SubgraphHandle,
    m_bound: usize,
) -> Result<Vec<Piece>, PartitionError> {
    assert!(m_bound >= 2, "partition bound M must be >= 2");
    let q = graph.degree_bound();
    if !graph.is_connected(&sub.vertices) {
        return Err(PartitionError::NotConnected);
    }
    if !sub.infinite && sub.vertices.len() < m_bound {
        return Err(PartitionError::TooSmall { size: sub.vertices.len(), required: m_bound });
    }

    // Grow the first piece to exactly M vertices, preferring non-frontier
    // vertices so it stays a finite piece when possible.
    let start = sub
        .vertices
        .iter()
        .copied()
        .find(|&v| !graph.touches_frontier(v))
        .unwrap_or_else(|| *sub.vertices.iter().next().expect("nonempty"));
    let mut first: BTreeSet<usize> = BTreeSet::from([start]);
    while first.len() < m_bound {
        let next = sub
            .vertices
            .iter()
            .copied()
            .filter(|v| !first.contains(v))
            .filter(|&v| graph.neighbors(v).iter().any(|w| first.contains(w)))
            .min_by_key(|&v| (graph.touches_frontier(v), v));
        match next {
            Some(v) => {
                first.insert(v);
            }
            None => break,
        }
    }

    let rest: BTreeSet<usize> = sub.vertices.difference(&first).copied().collect();
    let comps = graph.components(&rest);
    assert!(comps.len() <= q * m_bound, "at most qM components can hang off the first piece");

    let mut pieces: Vec<BTreeSet<usize>> = Vec::new();
    let mut merged_into_first: Vec<BTreeSet<usize>> = Vec::new();
    for comp in comps {
        let touches = comp.iter().any(|&v| graph.touches_frontier(v));
        if touches {
            // Stand-in for an infinite component: taken whole.
            pieces.push(comp);
            continue;
        }
        if comp.len() < m_bound {
            merged_into_first.push(comp);
        } else if comp.len() <= 2 * q * m_bound {
            pieces.push(comp);
        } else {
            // Repeatedly split oversized components; halves have size
            // > M, so they never fall below the lower bound.
            let mut stack = vec![comp];
            while let Some(big) = stack.pop() {
                if big.len() <= 2 * q * m_bound {
                    pieces.push(big);
                } else {
                    let (a, b) = split_lemma_par(graph, &big)?;
                    stack.push(a);
                    stack.push(b);
                }
            }
        }
    }
    for small in merged_into_first {
        first.extend(small);
    }
    debug_assert!(first.len() <= 2 * q * m_bound * m_bound);
    let mut out = vec![first];
    out.extend(pieces);
    out.sort_by(|a, b| a.iter().next().cmp(&b.iter().next()));
    Ok(out.into_iter().map(|vertices| SubgraphHandle::new(graph, vertices)).collect())
}

#[cfg(test)]
mod tests;
