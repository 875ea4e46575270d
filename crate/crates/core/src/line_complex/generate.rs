//! Generators for test corpora: the vertex-transitive complex with a given
//! face-degree scheme (truncated to a ball), finite closed complexes, and the
//! classic exponential / sine / punctured-sphere-cover complexes.

use super::{FaceSize, Label, LineComplex, Parity, RawComplex};
use std::collections::VecDeque;
use thiserror::Error;

/// A generation scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// Vertex-transitive complex where the corner between labels j and j+1
    /// lies on a face of half-perimeter `faces[j-1]` at every vertex,
    /// truncated to the ball of the given radius around the root.
    Regular { q: usize, faces: Vec<FaceSize>, radius: usize },
    /// Finite complex with 2n vertices realizing an n-sheeted closed surface.
    Closed { sheets: usize, q: usize },
    /// Named classic complexes.
    Classic { kind: ClassicKind, radius: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicKind {
    /// q=2, both faces infinite.
    Exp,
    /// q=3 with face scheme (2, 2, inf); mean excess 0.
    Sine,
    /// q=3, all faces infinite (universal cover of the thrice-punctured
    /// sphere); the 3-regular tree.
    PuncturedSphereCover,
}

#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("infeasible scheme: {0}")]
    InfeasibleScheme(String),
    #[error("generated complex failed validation: {0}")]
    Internal(String),
}

/// Build the complex for a scheme.
pub fn generate(scheme: &Scheme) -> Result<LineComplex, GenerateError> {
    let raw = match scheme {
        Scheme::Regular { q, faces, radius } => regular(*q, faces, *radius)?,
        Scheme::Closed { sheets, q } => closed(*sheets, *q)?,
        Scheme::Classic { kind, radius } => match kind {
            ClassicKind::Exp => {
                regular(2, &[FaceSize::Infinite, FaceSize::Infinite], *radius)?
            }
            ClassicKind::Sine => regular(
                3,
                &[FaceSize::Finite(2), FaceSize::Finite(2), FaceSize::Infinite],
                *radius,
            )?,
            ClassicKind::PuncturedSphereCover => regular(
                3,
                &[FaceSize::Infinite, FaceSize::Infinite, FaceSize::Infinite],
                *radius,
            )?,
        },
    };
    let diags = super::validate(&raw);
    if !diags.is_empty() {
        return Err(GenerateError::Internal(diags[0].to_string()));
    }
    LineComplex::from_raw(&raw).map_err(|e| GenerateError::Internal(e.to_string()))
}

/// Labeled-permutation construction of an n-sheeted closed complex: circles
/// c0..c(n-1), crosses x0..x(n-1); label 1 joins ci to x(i+1 mod n), the other
/// labels join ci to xi.
fn closed(sheets: usize, q: usize) -> Result<RawComplex, GenerateError> {
    if sheets < 1 {
        return Err(GenerateError::InfeasibleScheme("need at least one sheet".into()));
    }
    if q < 2 {
        return Err(GenerateError::InfeasibleScheme(format!("degree q={q} must be >= 2")));
    }
    let width = sheets.to_string().len();
    let mut raw = RawComplex { q, ..Default::default() };
    for i in 0..sheets {
        raw.vertices.push((format!("c{i:0width$}"), Parity::Circle));
        raw.vertices.push((format!("x{i:0width$}"), Parity::Cross));
    }
    for i in 0..sheets {
        for l in 1..=q {
            let target = if l == 1 { (i + 1) % sheets } else { i };
            raw.edges.push((format!("c{i:0width$}"), format!("x{target:0width$}"), l));
        }
    }
    Ok(raw)
}

/// Working state of the face-closing BFS.
struct Builder {
    q: usize,
    parity: Vec<Parity>,
    slots: Vec<Vec<Option<usize>>>,
    dist: Vec<usize>,
}

impl Builder {
    fn succ(&self, l: Label) -> Label {
        if l == self.q {
            1
        } else {
            l + 1
        }
    }

    fn pred(&self, l: Label) -> Label {
        if l == 1 {
            self.q
        } else {
            l - 1
        }
    }

    fn new_vertex(&mut self, parity: Parity, dist: usize) -> usize {
        self.parity.push(parity);
        self.slots.push(vec![None; self.q]);
        self.dist.push(dist);
        self.parity.len() - 1
    }

    fn add_edge(&mut self, a: usize, b: usize, l: Label) -> Result<(), GenerateError> {
        if self.parity[a] == self.parity[b] {
            return Err(GenerateError::InfeasibleScheme(format!(
                "face closure forces an edge between two {:?} vertices",
                self.parity[a]
            )));
        }
        for (v, w) in [(a, b), (b, a)] {
            if self.slots[v][l - 1].is_some() {
                return Err(GenerateError::InfeasibleScheme(format!(
                    "label {l} slot already occupied at vertex {v}"
                )));
            }
            self.slots[v][l - 1] = Some(w);
        }
        Ok(())
    }

    // Walk states mirror LineComplex::step on the partial complex.
    fn step(&self, v: usize, out: Label) -> Option<(usize, Label)> {
        let w = self.slots[v][out - 1]?;
        let next = match self.parity[w] {
            Parity::Circle => self.succ(out),
            Parity::Cross => self.pred(out),
        };
        Some((w, next))
    }

    fn step_back(&self, v: usize, out: Label) -> Option<(usize, Label)> {
        let inc = match self.parity[v] {
            Parity::Circle => self.pred(out),
            Parity::Cross => self.succ(out),
        };
        let u = self.slots[v][inc - 1]?;
        Some((u, inc))
    }

    fn corner_state(&self, v: usize, c: Label) -> (usize, Label) {
        match self.parity[v] {
            Parity::Circle => (v, self.succ(c)),
            Parity::Cross => (v, c),
        }
    }

    /// Inspect the face through corner (v, c): number of existing edges on
    /// its open walk, whether it is closed, and the two open ends.
    /// Open ends: forward end (u_f, missing out label) and backward end
    /// (u_b, missing incoming label).
    fn probe_face(&self, v: usize, c: Label) -> FaceProbe {
        let start = self.corner_state(v, c);
        let mut edges = 0usize;
        let mut cur = start;
        loop {
            match self.step(cur.0, cur.1) {
                Some(next) => {
                    edges += 1;
                    if next == start {
                        return FaceProbe { edges, closed: true, fwd: None, back: None };
                    }
                    cur = next;
                }
                None => break,
            }
        }
        let fwd = cur;
        let mut back = start;
        loop {
            match self.step_back(back.0, back.1) {
                Some(prev) => {
                    edges += 1;
                    back = prev;
                }
                None => break,
            }
        }
        let back_in = match self.parity[back.0] {
            Parity::Circle => self.pred(back.1),
            Parity::Cross => self.succ(back.1),
        };
        FaceProbe { edges, closed: false, fwd: Some(fwd), back: Some((back.0, back_in)) }
    }

    /// Close every face whose walk is one edge short of its target length,
    /// and reject faces that closed at the wrong length or overran it.
    /// Returns true if any edge was added.
    fn closure_pass(&mut self, faces: &[FaceSize]) -> Result<bool, GenerateError> {
        let mut changed = false;
        for v in 0..self.parity.len() {
            for c in 1..=self.q {
                let FaceSize::Finite(m) = faces[c - 1] else { continue };
                let target = 2 * m;
                let probe = self.probe_face(v, c);
                if probe.closed {
                    if probe.edges != target {
                        return Err(GenerateError::InfeasibleScheme(format!(
                            "face between labels {c} and {} closed with {} edges, expected {target}",
                            self.succ(c),
                            probe.edges
                        )));
                    }
                    continue;
                }
                if probe.edges > target - 1 {
                    return Err(GenerateError::InfeasibleScheme(format!(
                        "face between labels {c} and {} exceeds {target} edges without closing",
                        self.succ(c)
                    )));
                }
                if probe.edges == target - 1 {
                    let (uf, lf) = probe.fwd.expect("open faces have a forward end");
                    let (ub, lb) = probe.back.expect("open faces have a backward end");
                    if lf != lb {
                        return Err(GenerateError::InfeasibleScheme(format!(
                            "face closure needs mismatched labels {lf} and {lb}"
                        )));
                    }
                    self.add_edge(uf, ub, lf)?;
                    changed = true;
                }
            }
        }
        Ok(changed)
    }

    /// Walk the face through corner (v, c) to full closure, creating fresh
    /// vertices along the walk as needed.
    fn close_face(&mut self, v: usize, c: Label, faces: &[FaceSize]) -> Result<(), GenerateError> {
        let FaceSize::Finite(m) = faces[c - 1] else { return Ok(()) };
        let target = 2 * m;
        loop {
            let probe = self.probe_face(v, c);
            if probe.closed {
                return Ok(());
            }
            if probe.edges >= target - 1 {
                // One closure pass handles it (or reports infeasibility).
                if self.closure_pass(faces)? {
                    continue;
                }
                return Err(GenerateError::InfeasibleScheme(
                    "face needs a closing edge that cannot be placed".into(),
                ));
            }
            let (uf, lf) = probe.fwd.expect("open");
            let parity = match self.parity[uf] {
                Parity::Circle => Parity::Cross,
                Parity::Cross => Parity::Circle,
            };
            let d = self.dist[uf] + 1;
            let w = self.new_vertex(parity, d);
            self.add_edge(uf, w, lf)?;
            self.closure_pass(faces)?;
        }
    }
}

impl Builder {
    fn recompute_distances(&mut self) {
        let mut dist = vec![usize::MAX; self.parity.len()];
        dist[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for l in 1..=self.q {
                if let Some(w) = self.slots[v][l - 1] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        self.dist = dist;
    }
}

struct FaceProbe {
    edges: usize,
    closed: bool,
    fwd: Option<(usize, Label)>,
    back: Option<(usize, Label)>,
}

/// Face-closing BFS for the vertex-transitive scheme. Completes every vertex
/// within `radius` (one edge per label) and closes every finite face incident
/// to those vertices, so their excesses are resolved; the boundary layer
/// keeps frontier marks.
fn regular(q: usize, faces: &[FaceSize], radius: usize) -> Result<RawComplex, GenerateError> {
    if q < 2 {
        return Err(GenerateError::InfeasibleScheme(format!("degree q={q} must be >= 2")));
    }
    if faces.len() != q {
        return Err(GenerateError::InfeasibleScheme(format!(
            "face scheme must list {q} half-perimeters, got {}",
            faces.len()
        )));
    }
    for f in faces {
        match f {
            FaceSize::Finite(m) if *m >= 1 => {}
            FaceSize::Infinite => {}
            _ => {
                return Err(GenerateError::InfeasibleScheme(
                    "half-perimeters must be >= 1 or inf".into(),
                ))
            }
        }
    }
    let mut b = Builder { q, parity: Vec::new(), slots: Vec::new(), dist: Vec::new() };
    b.new_vertex(Parity::Circle, 0);
    // Face closures can create distance shortcuts, so completion runs in
    // rounds over recomputed true distances until the whole in-radius ball is
    // complete with all its finite faces closed.
    let mut rounds = 0usize;
    loop {
        rounds += 1;
        if rounds > 1000 {
            return Err(GenerateError::Internal(
                "ball completion did not stabilize in 1000 rounds".into(),
            ));
        }
        loop {
            while b.closure_pass(faces)? {}
            let next = (0..b.parity.len())
                .find(|&v| b.dist[v] <= radius && b.slots[v].iter().any(|s| s.is_none()));
            let Some(v) = next else { break };
            for l in 1..=q {
                if b.slots[v][l - 1].is_some() {
                    continue;
                }
                while b.closure_pass(faces)? {}
                if b.slots[v][l - 1].is_some() {
                    continue;
                }
                let parity = match b.parity[v] {
                    Parity::Circle => Parity::Cross,
                    Parity::Cross => Parity::Circle,
                };
                let w = b.new_vertex(parity, b.dist[v] + 1);
                b.add_edge(v, w, l)?;
            }
        }
        // Close all finite faces incident to in-radius vertices so excesses
        // there are resolved even when the face extends past the radius.
        let in_radius: Vec<usize> =
            (0..b.parity.len()).filter(|&v| b.dist[v] <= radius).collect();
        for &v in &in_radius {
            for c in 1..=q {
                b.close_face(v, c, faces)?;
            }
        }
        b.recompute_distances();
        let unfinished = (0..b.parity.len())
            .any(|v| b.dist[v] <= radius && b.slots[v].iter().any(|s| s.is_none()));
        if !unfinished {
            break;
        }
    }

    let n = b.parity.len();
    let width = n.to_string().len().max(3);
    let id = |v: usize| format!("v{v:0width$}");
    let mut raw = RawComplex { q, ..Default::default() };
    for v in 0..n {
        raw.vertices.push((id(v), b.parity[v]));
    }
    for v in 0..n {
        if b.parity[v] == Parity::Circle {
            for l in 1..=q {
                if let Some(w) = b.slots[v][l - 1] {
                    raw.edges.push((id(v), id(w), l));
                }
            }
        }
    }
    for v in 0..n {
        for l in 1..=q {
            if b.slots[v][l - 1].is_none() {
                raw.frontier.push((id(v), l));
            }
        }
    }
    // Declared-infinite corners: every corner whose scheme face is infinite.
    for v in 0..n {
        for c in 1..=q {
            if faces[c - 1] == FaceSize::Infinite {
                raw.infinite_corners.push((id(v), c));
            }
        }
    }
    Ok(raw)
}
