//! Line complexes (Speiser graphs) of degree q: connected bipartite graphs
//! with one edge per label 1..q at every vertex, embedded by the derived
//! rotation system (labels counterclockwise around circle vertices, clockwise
//! around cross vertices). Finite truncations of infinite complexes carry
//! explicit frontier half-edges; faces known to be infinite carry explicit
//! corner declarations.

mod generate;
mod spg;

pub use generate::{generate, ClassicKind, Scheme};
pub use spg::{parse_spg, serialize_spg, ParseError};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

/// Vertex parity: `Circle` lies over the base point in the left half sheet,
/// `Cross` over the one in the right half sheet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Parity {
    Circle,
    Cross,
}

impl Parity {
    pub fn symbol(self) -> char {
        match self {
            Parity::Circle => 'o',
            Parity::Cross => 'x',
        }
    }
}

/// Edge labels are 1-based: `1..=q`.
pub type Label = usize;

/// Internal vertex index (position in the sorted vertex table).
pub type VertexIx = usize;

/// Raw, possibly invalid complex data as read from a `.spg` file or a builder.
#[derive(Clone, Debug, Default)]
pub struct RawComplex {
    pub q: usize,
    /// (id, parity) pairs; ids are ASCII tokens.
    pub vertices: Vec<(String, Parity)>,
    /// (circle-id, cross-id, label) triples.
    pub edges: Vec<(String, String, Label)>,
    /// Unresolved half-edges of a truncation.
    pub frontier: Vec<(String, Label)>,
    /// Corners (vertex, label j) whose face, between labels j and j+1, is
    /// declared infinite.
    pub infinite_corners: Vec<(String, Label)>,
}

/// A named validation failure with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    BadDegree { q: usize },
    UnknownVertex { id: String },
    LabelOutOfRange { vertex: String, label: Label },
    NotBipartite { circle: String, cross: String, label: Label },
    DuplicateLabel { vertex: String, label: Label },
    MissingHalfEdge { vertex: String, label: Label },
    FrontierOverlap { vertex: String, label: Label },
    Disconnected { component_of: String, other: String },
    DuplicateVertex { id: String },
    InfiniteCornerClosed { vertex: String, label: Label },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::BadDegree { q } => write!(f, "degree q={q} must be >= 2"),
            Diagnostic::UnknownVertex { id } => write!(f, "edge references unknown vertex {id}"),
            Diagnostic::LabelOutOfRange { vertex, label } => {
                write!(f, "label {label} out of range at {vertex}")
            }
            Diagnostic::NotBipartite { circle, cross, label } => {
                write!(f, "edge {circle}-{cross} (label {label}) does not join a circle to a cross")
            }
            Diagnostic::DuplicateLabel { vertex, label } => {
                write!(f, "vertex {vertex} carries label {label} more than once")
            }
            Diagnostic::MissingHalfEdge { vertex, label } => {
                write!(f, "vertex {vertex} lacks label {label} and it is not in the frontier")
            }
            Diagnostic::FrontierOverlap { vertex, label } => {
                write!(f, "frontier ({vertex}, {label}) duplicates an existing edge")
            }
            Diagnostic::Disconnected { component_of, other } => {
                write!(f, "graph is disconnected: {other} unreachable from {component_of}")
            }
            Diagnostic::DuplicateVertex { id } => write!(f, "vertex id {id} repeated"),
            Diagnostic::InfiniteCornerClosed { vertex, label } => {
                write!(f, "corner ({vertex}, {label}) declared infinite but its face closes")
            }
        }
    }
}

/// A validated line complex. Immutable; all operations are pure.
#[derive(Clone, Debug)]
pub struct LineComplex {
    q: usize,
    ids: Vec<String>,
    parity: Vec<Parity>,
    /// slots[v][label-1] = neighbor index.
    slots: Vec<Vec<Option<VertexIx>>>,
    frontier: BTreeSet<(VertexIx, Label)>,
    infinite_corners: BTreeSet<(VertexIx, Label)>,
}

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("invalid line complex: {0}")]
    Invalid(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("face walk failed to close within the edge budget (corrupted input)")]
    NonOrientableWalk,
    #[error("unresolved excess at ball radius {0}: truncation too small")]
    UnresolvedExcess(usize),
}

/// Validate raw data against the line-complex invariants. Empty result means
/// the data is a valid complex (possibly a truncation with frontier marks).
pub fn validate(raw: &RawComplex) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    if raw.q < 2 {
        diags.push(Diagnostic::BadDegree { q: raw.q });
        return diags;
    }
    let mut index: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, (id, _)) in raw.vertices.iter().enumerate() {
        if index.insert(id.as_str(), i).is_some() {
            diags.push(Diagnostic::DuplicateVertex { id: id.clone() });
        }
    }
    let n = raw.vertices.len();
    let mut slots: Vec<Vec<Option<usize>>> = vec![vec![None; raw.q]; n];
    for (cid, xid, label) in &raw.edges {
        let (ci, xi) = match (index.get(cid.as_str()), index.get(xid.as_str())) {
            (Some(&a), Some(&b)) => (a, b),
            (None, _) => {
                diags.push(Diagnostic::UnknownVertex { id: cid.clone() });
                continue;
            }
            (_, None) => {
                diags.push(Diagnostic::UnknownVertex { id: xid.clone() });
                continue;
            }
        };
        if *label < 1 || *label > raw.q {
            diags.push(Diagnostic::LabelOutOfRange { vertex: cid.clone(), label: *label });
            continue;
        }
        if raw.vertices[ci].1 != Parity::Circle || raw.vertices[xi].1 != Parity::Cross {
            diags.push(Diagnostic::NotBipartite {
                circle: cid.clone(),
                cross: xid.clone(),
                label: *label,
            });
            continue;
        }
        for (v, w) in [(ci, xi), (xi, ci)] {
            if slots[v][*label - 1].is_some() {
                diags.push(Diagnostic::DuplicateLabel {
                    vertex: raw.vertices[v].0.clone(),
                    label: *label,
                });
            } else {
                slots[v][*label - 1] = Some(w);
            }
        }
    }
    let mut frontier = BTreeSet::new();
    for (id, label) in &raw.frontier {
        let Some(&v) = index.get(id.as_str()) else {
            diags.push(Diagnostic::UnknownVertex { id: id.clone() });
            continue;
        };
        if *label < 1 || *label > raw.q {
            diags.push(Diagnostic::LabelOutOfRange { vertex: id.clone(), label: *label });
            continue;
        }
        if slots[v][*label - 1].is_some() {
            diags.push(Diagnostic::FrontierOverlap { vertex: id.clone(), label: *label });
        }
        frontier.insert((v, *label));
    }
    for (id, label) in &raw.infinite_corners {
        if !index.contains_key(id.as_str()) {
            diags.push(Diagnostic::UnknownVertex { id: id.clone() });
        } else if *label < 1 || *label > raw.q {
            diags.push(Diagnostic::LabelOutOfRange { vertex: id.clone(), label: *label });
        }
    }
    // Each non-frontier vertex carries exactly one edge per label.
    for v in 0..n {
        for l in 1..=raw.q {
            if slots[v][l - 1].is_none() && !frontier.contains(&(v, l)) {
                diags.push(Diagnostic::MissingHalfEdge {
                    vertex: raw.vertices[v].0.clone(),
                    label: l,
                });
            }
        }
    }
    // Connectivity over the undirected graph.
    if n > 0 {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for s in &slots[v] {
                if let Some(w) = s {
                    if !seen[*w] {
                        seen[*w] = true;
                        queue.push_back(*w);
                    }
                }
            }
        }
        if let Some(unreached) = (0..n).find(|&v| !seen[v]) {
            diags.push(Diagnostic::Disconnected {
                component_of: raw.vertices[0].0.clone(),
                other: raw.vertices[unreached].0.clone(),
            });
        }
    }
    // A declared-infinite corner whose face walk closes is contradictory.
    if diags.is_empty() {
        if let Ok(complex) = LineComplex::from_raw_unchecked(raw) {
            if let Ok(faces) = complex.trace_faces() {
                for face in &faces {
                    if !matches!(face.half_perimeter, FaceSize::Finite(_)) {
                        continue;
                    }
                    for corner in &face.corners {
                        if complex.infinite_corners.contains(corner) {
                            diags.push(Diagnostic::InfiniteCornerClosed {
                                vertex: complex.ids[corner.0].clone(),
                                label: corner.1,
                            });
                        }
                    }
                }
            }
        }
    }
    diags.sort_by_key(|d| format!("{d:?}"));
    diags.dedup();
    diags
}

/// Size of a traced face: half-perimeter m for a closed 2m-gon, `Infinite`
/// for a declared logarithmic face, `Unknown` when the walk leaves the
/// truncation through the frontier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FaceSize {
    Finite(usize),
    Infinite,
    Unknown,
}

impl FaceSize {
    /// 1/m with 1/inf = 0; `None` when unknown.
    pub fn reciprocal(self) -> Option<BigRational> {
        match self {
            FaceSize::Finite(m) => Some(BigRational::new(BigInt::from(1), BigInt::from(m as i64))),
            FaceSize::Infinite => Some(BigRational::zero()),
            FaceSize::Unknown => None,
        }
    }
}

impl fmt::Display for FaceSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceSize::Finite(m) => write!(f, "{m}"),
            FaceSize::Infinite => write!(f, "inf"),
            FaceSize::Unknown => write!(f, "?"),
        }
    }
}

/// A face traced from the rotation system.
#[derive(Clone, Debug)]
pub struct Face {
    pub id: usize,
    /// The two cyclically adjacent labels (j, j+1) that alternate on the walk.
    pub labels: (Label, Label),
    pub half_perimeter: FaceSize,
    pub closed: bool,
    /// Corner visits (vertex, corner label) in walk order; cyclic when closed.
    pub corners: Vec<(VertexIx, Label)>,
    /// Edges traversed, as canonical (circle, label) pairs, in walk order.
    /// One per corner when closed; one fewer on an open walk.
    pub edges: Vec<(VertexIx, Label)>,
}

/// Directed walk state: about to leave `vertex` through label `out`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct WalkState {
    vertex: VertexIx,
    out: Label,
}

impl LineComplex {
    /// Validate and build. Fails with the first diagnostic if any.
    pub fn from_raw(raw: &RawComplex) -> Result<Self, ComplexError> {
        let diags = validate(raw);
        if let Some(d) = diags.first() {
            return Err(ComplexError::Invalid(d.to_string()));
        }
        Self::from_raw_unchecked(raw)
    }

    fn from_raw_unchecked(raw: &RawComplex) -> Result<Self, ComplexError> {
        // Canonical vertex order: sorted by id. Everything downstream is then
        // independent of the storage order of the input.
        let mut order: Vec<usize> = (0..raw.vertices.len()).collect();
        order.sort_by(|&a, &b| raw.vertices[a].0.cmp(&raw.vertices[b].0));
        let ids: Vec<String> = order.iter().map(|&i| raw.vertices[i].0.clone()).collect();
        let parity: Vec<Parity> = order.iter().map(|&i| raw.vertices[i].1).collect();
        let index: BTreeMap<&str, usize> =
            ids.iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect();
        let mut slots = vec![vec![None; raw.q]; ids.len()];
        for (cid, xid, label) in &raw.edges {
            let ci =
                *index.get(cid.as_str()).ok_or_else(|| ComplexError::UnknownVertex(cid.clone()))?;
            let xi =
                *index.get(xid.as_str()).ok_or_else(|| ComplexError::UnknownVertex(xid.clone()))?;
            slots[ci][*label - 1] = Some(xi);
            slots[xi][*label - 1] = Some(ci);
        }
        let frontier = raw
            .frontier
            .iter()
            .filter_map(|(id, l)| index.get(id.as_str()).map(|&v| (v, *l)))
            .collect();
        let infinite_corners = raw
            .infinite_corners
            .iter()
            .filter_map(|(id, l)| index.get(id.as_str()).map(|&v| (v, *l)))
            .collect();
        Ok(LineComplex { q: raw.q, ids, parity, slots, frontier, infinite_corners })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.slots.iter().flatten().filter(|s| s.is_some()).count() / 2
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id_of(&self, v: VertexIx) -> &str {
        &self.ids[v]
    }

    pub fn parity_of(&self, v: VertexIx) -> Parity {
        self.parity[v]
    }

    pub fn index_of(&self, id: &str) -> Option<VertexIx> {
        self.ids.binary_search_by(|probe| probe.as_str().cmp(id)).ok()
    }

    pub fn neighbor(&self, v: VertexIx, label: Label) -> Option<VertexIx> {
        self.slots[v][label - 1]
    }

    pub fn neighbors(&self, v: VertexIx) -> impl Iterator<Item = VertexIx> + '_ {
        self.slots[v].iter().filter_map(|s| *s)
    }

    pub fn is_frontier_vertex(&self, v: VertexIx) -> bool {
        (1..=self.q).any(|l| self.frontier.contains(&(v, l)))
    }

    pub fn frontier(&self) -> &BTreeSet<(VertexIx, Label)> {
        &self.frontier
    }

    pub fn has_frontier(&self) -> bool {
        !self.frontier.is_empty()
    }

    pub fn infinite_corners(&self) -> &BTreeSet<(VertexIx, Label)> {
        &self.infinite_corners
    }

    pub fn to_raw(&self) -> RawComplex {
        let mut edges = Vec::new();
        for v in 0..self.ids.len() {
            if self.parity[v] == Parity::Circle {
                for l in 1..=self.q {
                    if let Some(w) = self.slots[v][l - 1] {
                        edges.push((self.ids[v].clone(), self.ids[w].clone(), l));
                    }
                }
            }
        }
        RawComplex {
            q: self.q,
            vertices: self.ids.iter().cloned().zip(self.parity.iter().copied()).collect(),
            edges,
            frontier: self.frontier.iter().map(|&(v, l)| (self.ids[v].clone(), l)).collect(),
            infinite_corners: self
                .infinite_corners
                .iter()
                .map(|&(v, l)| (self.ids[v].clone(), l))
                .collect(),
        }
    }

    fn label_succ(&self, l: Label) -> Label {
        if l == self.q {
            1
        } else {
            l + 1
        }
    }

    fn label_pred(&self, l: Label) -> Label {
        if l == 1 {
            self.q
        } else {
            l - 1
        }
    }

    /// One face-walk step. Traverses the edge (state.vertex, state.out); on
    /// arrival via label l the walk departs via l+1 at a circle, l-1 at a
    /// cross.
    fn step(&self, s: WalkState) -> Option<WalkState> {
        let w = self.slots[s.vertex][s.out - 1]?;
        let out = match self.parity[w] {
            Parity::Circle => self.label_succ(s.out),
            Parity::Cross => self.label_pred(s.out),
        };
        Some(WalkState { vertex: w, out })
    }

    /// Inverse of `step`.
    fn step_back(&self, s: WalkState) -> Option<WalkState> {
        let inc = match self.parity[s.vertex] {
            Parity::Circle => self.label_pred(s.out),
            Parity::Cross => self.label_succ(s.out),
        };
        let u = self.slots[s.vertex][inc - 1]?;
        Some(WalkState { vertex: u, out: inc })
    }

    /// The walk state sitting in corner (v, c), the corner between labels c
    /// and c+1 at v.
    fn corner_state(&self, v: VertexIx, c: Label) -> WalkState {
        match self.parity[v] {
            Parity::Circle => WalkState { vertex: v, out: self.label_succ(c) },
            Parity::Cross => WalkState { vertex: v, out: c },
        }
    }

    /// The corner a walk state occupies (inverse of `corner_state`).
    fn state_corner(&self, s: WalkState) -> (VertexIx, Label) {
        let c = match self.parity[s.vertex] {
            Parity::Circle => self.label_pred(s.out),
            Parity::Cross => s.out,
        };
        (s.vertex, c)
    }

    /// Trace every face of the derived rotation system. Every corner of every
    /// vertex appears in exactly one face.
    pub fn trace_faces(&self) -> Result<Vec<Face>, ComplexError> {
        let budget = 2 * self.edge_count() + 2;
        let mut seen: BTreeSet<(VertexIx, Label)> = BTreeSet::new();
        let mut faces = Vec::new();
        for v in 0..self.ids.len() {
            for c in 1..=self.q {
                if seen.contains(&(v, c)) {
                    continue;
                }
                let face = self.trace_face_from(v, c, budget)?;
                for corner in &face.corners {
                    seen.insert(*corner);
                }
                faces.push(face);
            }
        }
        for (i, f) in faces.iter_mut().enumerate() {
            f.id = i;
        }
        Ok(faces)
    }

    fn trace_face_from(&self, v: VertexIx, c: Label, budget: usize) -> Result<Face, ComplexError> {
        let start = self.corner_state(v, c);
        let mut states = vec![start];
        let mut closed = false;
        let mut cur = start;
        loop {
            match self.step(cur) {
                Some(next) => {
                    if next == start {
                        closed = true;
                        break;
                    }
                    states.push(next);
                    cur = next;
                    if states.len() > budget {
                        return Err(ComplexError::NonOrientableWalk);
                    }
                }
                None => break,
            }
        }
        if !closed {
            // Open walk: extend backwards to the other frontier end.
            let mut prefix = Vec::new();
            let mut back = start;
            loop {
                match self.step_back(back) {
                    Some(prev) => {
                        prefix.push(prev);
                        back = prev;
                        if prefix.len() > budget {
                            return Err(ComplexError::NonOrientableWalk);
                        }
                    }
                    None => break,
                }
            }
            prefix.reverse();
            prefix.extend(states);
            states = prefix;
        }
        let corner0 = self.state_corner(states[0]).1;
        let labels = (corner0, self.label_succ(corner0));
        let corners: Vec<(VertexIx, Label)> =
            states.iter().map(|&s| self.state_corner(s)).collect();
        let declared_inf = corners.iter().any(|c| self.infinite_corners.contains(c));
        let half_perimeter = if closed {
            FaceSize::Finite(states.len() / 2)
        } else if declared_inf {
            FaceSize::Infinite
        } else {
            FaceSize::Unknown
        };
        let edge_states: &[WalkState] =
            if closed { &states } else { &states[..states.len().saturating_sub(1)] };
        let edges = edge_states
            .iter()
            .map(|&s| {
                if self.parity[s.vertex] == Parity::Circle {
                    (s.vertex, s.out)
                } else {
                    (self.slots[s.vertex][s.out - 1].expect("edge exists on walk"), s.out)
                }
            })
            .collect();
        Ok(Face { id: 0, labels, half_perimeter, closed, corners, edges })
    }

    /// Face size seen from every corner: (vertex, corner label) -> FaceSize.
    pub fn corner_faces(&self) -> Result<BTreeMap<(VertexIx, Label), FaceSize>, ComplexError> {
        let faces = self.trace_faces()?;
        let mut map = BTreeMap::new();
        for face in &faces {
            for corner in &face.corners {
                map.insert(*corner, face.half_perimeter);
            }
        }
        Ok(map)
    }

    /// Excess E_p = sum over the q corners of 1/m_i, minus q, plus 2.
    /// `None` when some incident face is unknown.
    pub fn vertex_excess(&self, p: VertexIx) -> Result<Option<BigRational>, ComplexError> {
        if p >= self.ids.len() {
            return Err(ComplexError::UnknownVertex(format!("#{p}")));
        }
        let corners = self.corner_faces()?;
        Ok(self.vertex_excess_with(&corners, p))
    }

    fn vertex_excess_with(
        &self,
        corners: &BTreeMap<(VertexIx, Label), FaceSize>,
        p: VertexIx,
    ) -> Option<BigRational> {
        let mut sum = BigRational::zero();
        for c in 1..=self.q {
            let size = corners.get(&(p, c)).copied().unwrap_or(FaceSize::Unknown);
            sum += size.reciprocal()?;
        }
        let q = BigRational::from_integer(BigInt::from(self.q as i64));
        let two = BigRational::from_integer(BigInt::from(2));
        Some(sum - q + two)
    }

    /// All vertex excesses, from a single face trace.
    pub fn excesses(&self) -> Result<Vec<Option<BigRational>>, ComplexError> {
        let corners = self.corner_faces()?;
        Ok((0..self.ids.len()).map(|v| self.vertex_excess_with(&corners, v)).collect())
    }

    /// Combinatorial ball: all vertices at graph distance <= j from p.
    pub fn ball(&self, p: VertexIx, j: usize) -> Result<BTreeSet<VertexIx>, ComplexError> {
        if p >= self.ids.len() {
            return Err(ComplexError::UnknownVertex(format!("#{p}")));
        }
        let mut dist = BTreeMap::from([(p, 0usize)]);
        let mut queue = VecDeque::from([p]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            if d == j {
                continue;
            }
            for w in self.neighbors(v) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist.into_keys().collect())
    }

    /// Partial mean-excess sequence: (j, n_j, mean over B(p, j)) for
    /// j = 0..=jmax. Fails at the first radius containing an unresolved
    /// vertex.
    pub fn mean_excess_sequence(
        &self,
        p: VertexIx,
        jmax: usize,
    ) -> Result<Vec<(usize, usize, BigRational)>, ComplexError> {
        if p >= self.ids.len() {
            return Err(ComplexError::UnknownVertex(format!("#{p}")));
        }
        let excesses = self.excesses()?;
        let mut out = Vec::new();
        for j in 0..=jmax {
            let ball = self.ball(p, j)?;
            let mut sum = BigRational::zero();
            for &v in &ball {
                match &excesses[v] {
                    Some(e) => sum += e.clone(),
                    None => return Err(ComplexError::UnresolvedExcess(j)),
                }
            }
            let n = ball.len();
            let mean = sum / BigRational::from_integer(BigInt::from(n as i64));
            out.push((j, n, mean));
        }
        Ok(out)
    }

    /// `Some(E)` when every vertex has the same resolved excess E.
    pub fn is_regularly_ramified(&self) -> Result<Option<BigRational>, ComplexError> {
        let excesses = self.excesses()?;
        let mut common: Option<BigRational> = None;
        for e in excesses {
            let e = e.ok_or(ComplexError::UnresolvedExcess(0))?;
            match &common {
                None => common = Some(e),
                Some(c) if *c == e => {}
                Some(_) => return Ok(None),
            }
        }
        Ok(common)
    }
}
