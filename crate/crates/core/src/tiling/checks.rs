//! Condition checkers over tilings: the four-condition hyperbolicity check
//! on an explicit partition, the uniform-cluster variant driven by the
//! degree-3 triangle adjacency graph, the combinatorial Euler identity for
//! simply-connected triangle unions, and the isoperimetric face bound.

use super::constants::{constant_ledger, ConstantLedger};
use super::{Tiling, TilingError};
use crate::partitioner::{partition_lemma_par2, AdjGraph, SubgraphHandle};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

/// The four hypotheses of the tiling hyperbolicity criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Condition {
    M1,
    M2,
    R1,
    R2,
}

impl Condition {
    pub fn as_str(self) -> &'static str {
        match self {
            Condition::M1 => "M1",
            Condition::M2 => "M2",
            Condition::R1 => "R1",
            Condition::R2 => "R2",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub condition: Condition,
    pub witness: String,
}

#[derive(Clone, Debug)]
pub struct ClusterReport {
    pub id: String,
    pub size: usize,
    pub curvature_sum: f64,
}

/// Verdict over a tiling: hyperbolic when every checked condition holds.
#[derive(Clone, Debug)]
pub struct TilingCertificate {
    pub hyperbolic: bool,
    pub theorem: String,
    pub eps: f64,
    pub m_bound: usize,
    pub clusters: Vec<ClusterReport>,
    /// First witness per violated condition, ordered M1, M2, R1, R2.
    pub violations: Vec<Violation>,
    pub ledger: ConstantLedger,
    pub annotation: Option<String>,
}

impl TilingCertificate {
    pub fn violated_conditions(&self) -> Vec<Condition> {
        self.violations.iter().map(|v| v.condition).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "verdict": if self.hyperbolic { "hyperbolic" } else { "conditions-violated" },
            "theorem": self.theorem,
            "eps": self.eps,
            "M": self.m_bound,
            "pieces": self.clusters.iter().map(|c| json!({
                "id": c.id,
                "size": c.size,
                "curvature_sum": c.curvature_sum,
            })).collect::<Vec<_>>(),
            "witness": self.violations.first().map(|v| json!({
                "condition": v.condition.as_str(),
                "detail": v.witness,
            })),
            "violations": self.violations.iter().map(|v| json!({
                "condition": v.condition.as_str(),
                "detail": v.witness,
            })).collect::<Vec<_>>(),
            "ledger": self.ledger.to_json(),
            "annotation": self.annotation,
        })
    }
}

fn regularity_violations(tiling: &Tiling, eps: f64) -> Vec<Violation> {
    let mut out = Vec::new();
    'r1: for t in 0..tiling.triangle_count() {
        for (j, a) in tiling.triangle_angles(t).iter().enumerate() {
            if *a < eps {
                out.push(Violation {
                    condition: Condition::R1,
                    witness: format!(
                        "triangle {} angle {} = {a} < eps = {eps}",
                        tiling.triangle_id(t),
                        tiling.vertex_id(tiling.triangle_vertices(t)[j]),
                    ),
                });
                break 'r1;
            }
        }
    }
    for t in 0..tiling.triangle_count() {
        let k = tiling.triangle_k(t);
        if k > 0.0 {
            let perimeter: f64 = tiling.triangle_sides(t).iter().sum();
            let cap = (2.0 * PI - eps) / k.sqrt();
            if perimeter > cap {
                out.push(Violation {
                    condition: Condition::R2,
                    witness: format!(
                        "triangle {} perimeter {perimeter} > (2*pi - eps) k^(-1/2) = {cap}",
                        tiling.triangle_id(t)
                    ),
                });
                break;
            }
        }
    }
    out
}

fn max_positive_k(tiling: &Tiling) -> f64 {
    (0..tiling.triangle_count()).map(|t| tiling.triangle_k(t)).fold(0.0, f64::max)
}

/// Remark-style annotation on side lengths: with k > 0 and all sides >= eps,
/// or k <= 0 and all sides in [eps, M], the isoperimetric inequality holds
/// for the intrinsic metric itself and the surface is Gromov hyperbolic.
fn gromov_annotation(tiling: &Tiling, eps: f64, m_bound: usize) -> Option<String> {
    let all_positive_k = (0..tiling.triangle_count()).all(|t| tiling.triangle_k(t) > 0.0);
    let all_nonpositive_k = (0..tiling.triangle_count()).all(|t| tiling.triangle_k(t) <= 0.0);
    let sides_above =
        (0..tiling.triangle_count()).all(|t| tiling.triangle_sides(t).iter().all(|s| *s >= eps));
    let sides_below = (0..tiling.triangle_count())
        .all(|t| tiling.triangle_sides(t).iter().all(|s| *s <= m_bound as f64));
    if all_positive_k && sides_above {
        Some(
            "side lengths >= eps with k > 0: linear isoperimetric inequality for the \
             intrinsic metric; Gromov hyperbolic"
                .into(),
        )
    } else if all_nonpositive_k && sides_above && sides_below {
        Some(
            "side lengths in [eps, M] with k <= 0: linear isoperimetric inequality for the \
             intrinsic metric; Gromov hyperbolic"
                .into(),
        )
    } else {
        None
    }
}

/// Check (M1), (M2), (R1), (R2) over the tiling's assigned clusters:
/// cluster sizes <= M, cluster curvature sums <= -eps*pi, all corner angles
/// >= eps, and the spherical perimeter cap. Every triangle must be assigned
/// to a cluster.
pub fn check_theorem_t(
    tiling: &Tiling,
    eps: f64,
    m_bound: usize,
) -> Result<TilingCertificate, TilingError> {
    if !(eps > 0.0) {
        return Err(TilingError::Domain(format!("eps = {eps} must be > 0")));
    }
    let mut assigned = vec![false; tiling.triangle_count()];
    for ixs in tiling.clusters().values() {
        for &t in ixs {
            assigned[t] = true;
        }
    }
    if let Some(t) = assigned.iter().position(|a| !a) {
        return Err(TilingError::MissingCluster(tiling.triangle_id(t).to_string()));
    }

    let mut violations = Vec::new();
    let mut clusters = Vec::new();
    let mut m1_hit = false;
    let mut m2_hit = false;
    for (cid, ixs) in tiling.clusters() {
        let mut sum = 0.0;
        for &t in ixs {
            sum += tiling.angular_curvature(t)?;
        }
        clusters.push(ClusterReport { id: cid.clone(), size: ixs.len(), curvature_sum: sum });
        if !m1_hit && ixs.len() > m_bound {
            violations.push(Violation {
                condition: Condition::M1,
                witness: format!("cluster {cid} has {} triangles > M = {m_bound}", ixs.len()),
            });
            m1_hit = true;
        }
        if !m2_hit && sum > -eps * PI {
            violations.push(Violation {
                condition: Condition::M2,
                witness: format!(
                    "cluster {cid} curvature sum {sum} > -eps*pi = {}",
                    -eps * PI
                ),
            });
            m2_hit = true;
        }
    }
    violations.extend(regularity_violations(tiling, eps));
    violations.sort_by_key(|v| v.condition);
    let ledger = constant_ledger(eps, m_bound, max_positive_k(tiling))?;
    let hyperbolic = violations.is_empty();
    let annotation = if hyperbolic { gromov_annotation(tiling, eps, m_bound) } else { None };
    Ok(TilingCertificate {
        hyperbolic,
        theorem: "tiling-conditions".into(),
        eps,
        m_bound,
        clusters,
        violations,
        ledger,
        annotation,
    })
}

/// Uniform-cluster variant: ignores stored clusters, checks (R1) and (R2),
/// then partitions the degree-3 triangle adjacency graph into connected
/// clusters of size in [M, 6M^2] and requires curvature sum <= -eps on each.
/// Components smaller than M are checked directly as single clusters.
pub fn check_final_tiling_theorem(
    tiling: &Tiling,
    eps: f64,
    m_bound: usize,
) -> Result<TilingCertificate, TilingError> {
    if !(eps > 0.0) {
        return Err(TilingError::Domain(format!("eps = {eps} must be > 0")));
    }
    if m_bound < 1 {
        return Err(TilingError::Domain("M must be >= 1".into()));
    }
    let adj = tiling.triangle_adjacency();
    let n = adj.len();
    let graph = AdjGraph::new(adj, 3, vec![false; n]);
    let all: BTreeSet<usize> = (0..n).collect();

    let mut pieces: Vec<BTreeSet<usize>> = Vec::new();
    for comp in graph.components(&all) {
        if comp.len() < m_bound || m_bound == 1 {
            // Below the partition threshold (or singleton bound): check the
            // component directly as one cluster.
            if m_bound == 1 {
                pieces.extend(comp.into_iter().map(|t| BTreeSet::from([t])));
            } else {
                pieces.push(comp);
            }
            continue;
        }
        let handle = SubgraphHandle { vertices: comp, infinite: false };
        let split = partition_lemma_par2(&graph, &handle, m_bound)
            .map_err(|e| TilingError::Domain(e.to_string()))?;
        pieces.extend(split.into_iter().map(|p| p.vertices));
    }

    let mut violations = Vec::new();
    let mut clusters = Vec::new();
    for (i, piece) in pieces.iter().enumerate() {
        let mut sum = 0.0;
        for &t in piece {
            sum += tiling.angular_curvature(t)?;
        }
        clusters.push(ClusterReport {
            id: format!("auto{i}"),
            size: piece.len(),
            curvature_sum: sum,
        });
        if violations.iter().all(|v: &Violation| v.condition != Condition::M2) && sum > -eps {
            violations.push(Violation {
                condition: Condition::M2,
                witness: format!("auto cluster {i} curvature sum {sum} > -eps = {}", -eps),
            });
        }
    }
    violations.extend(regularity_violations(tiling, eps));
    violations.sort_by_key(|v| v.condition);
    let ledger = constant_ledger(eps, m_bound, max_positive_k(tiling))?;
    let hyperbolic = violations.is_empty();
    let annotation = if hyperbolic { gromov_annotation(tiling, eps, m_bound) } else { None };
    Ok(TilingCertificate {
        hyperbolic,
        theorem: "uniform-clusters".into(),
        eps,
        m_bound,
        clusters,
        violations,
        ledger,
        annotation,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    /// Edges on the boundary of the union.
    pub boundary_edges: usize,
    /// Triangles in the union.
    pub triangles: usize,
    /// Vertices interior to the union.
    pub interior_vertices: usize,
    /// boundary_edges - (triangles - 2*interior_vertices + 2); zero for
    /// simply-connected unions.
    pub residual: i64,
}

/// Count boundary edges, triangles, and interior vertices of a
/// simply-connected union of triangles, and evaluate the Euler identity
/// e0 = f - 2v' + 2. Connectivity, absence of holes (Euler characteristic 1)
/// and absence of pinch vertices are verified first.
pub fn euler_boundary_identity(
    tiling: &Tiling,
    region: &BTreeSet<usize>,
) -> Result<EulerReport, TilingError> {
    if region.is_empty() {
        return Err(TilingError::NotSimplyConnected("empty region".into()));
    }
    for &t in region {
        if t >= tiling.triangle_count() {
            return Err(TilingError::UnknownTriangle(format!("#{t}")));
        }
    }
    // Side multiplicities.
    let mut sides: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut vertices: BTreeSet<usize> = BTreeSet::new();
    for &t in region {
        let vs = tiling.triangle_vertices(t);
        vertices.extend(vs);
        for (a, b) in [(vs[0], vs[1]), (vs[1], vs[2]), (vs[2], vs[0])] {
            *sides.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    if let Some(((a, b), m)) = sides.iter().find(|(_, &m)| m > 2) {
        return Err(TilingError::NotSimplyConnected(format!(
            "side ({}, {}) borders {m} triangles",
            tiling.vertex_id(*a),
            tiling.vertex_id(*b)
        )));
    }
    // Connectivity over shared sides.
    let adj = tiling.triangle_adjacency();
    let start = *region.iter().next().expect("nonempty");
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(t) = stack.pop() {
        for &u in &adj[t] {
            if region.contains(&u) && seen.insert(u) {
                stack.push(u);
            }
        }
    }
    if seen.len() != region.len() {
        return Err(TilingError::NotSimplyConnected("region is disconnected".into()));
    }
    // Euler characteristic v - e + f = 1 rules out holes.
    let v = vertices.len() as i64;
    let e = sides.len() as i64;
    let f = region.len() as i64;
    if v - e + f != 1 {
        return Err(TilingError::NotSimplyConnected(format!(
            "Euler characteristic {} != 1",
            v - e + f
        )));
    }
    // Pinch check: every boundary vertex carries exactly two boundary edges.
    let boundary: Vec<(usize, usize)> =
        sides.iter().filter(|(_, &m)| m == 1).map(|(&s, _)| s).collect();
    let mut incident: BTreeMap<usize, usize> = BTreeMap::new();
    for &(a, b) in &boundary {
        *incident.entry(a).or_default() += 1;
        *incident.entry(b).or_default() += 1;
    }
    if let Some((v, m)) = incident.iter().find(|(_, &m)| m != 2) {
        return Err(TilingError::NotSimplyConnected(format!(
            "boundary vertex {} carries {m} boundary edges",
            tiling.vertex_id(*v)
        )));
    }
    let boundary_vertices: BTreeSet<usize> = incident.into_keys().collect();
    let interior_vertices = vertices.len() - boundary_vertices.len();
    let e0 = boundary.len();
    let residual = e0 as i64 - (f - 2 * interior_vertices as i64 + 2);
    Ok(EulerReport {
        boundary_edges: e0,
        triangles: region.len(),
        interior_vertices,
        residual,
    })
}

#[derive(Clone, Debug)]
pub struct IsoperimetricReport {
    pub boundary_edges: usize,
    pub triangles: usize,
    pub eps: BigRational,
    pub m_bound: usize,
    /// f <= (6 M^2 / eps) e0, evaluated exactly as f*eps <= 6 M^2 e0.
    pub bound_holds: bool,
    /// Whether (M1) and (M2) were verified on the ambient tiling's clusters.
    pub preconditions_met: bool,
}

impl IsoperimetricReport {
    pub fn to_json(&self) -> Value {
        json!({
            "e0": self.boundary_edges,
            "f": self.triangles,
            "eps": crate::exact::rational_string(&self.eps),
            "M": self.m_bound,
            "bound_holds": self.bound_holds,
            "preconditions_met": self.preconditions_met,
        })
    }
}

/// The combinatorial isoperimetric bound f <= (6 M^2 / eps) e0 on a finite
/// triangle union, evaluated in exact rational arithmetic. The (M1)/(M2)
/// preconditions are verified on the ambient tiling's cluster assignment and
/// reported alongside.
pub fn comb_isoperimetric_check(
    tiling: &Tiling,
    region: &BTreeSet<usize>,
    eps: &BigRational,
    m_bound: usize,
) -> Result<IsoperimetricReport, TilingError> {
    let mut sides: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &t in region {
        if t >= tiling.triangle_count() {
            return Err(TilingError::UnknownTriangle(format!("#{t}")));
        }
        let vs = tiling.triangle_vertices(t);
        for (a, b) in [(vs[0], vs[1]), (vs[1], vs[2]), (vs[2], vs[0])] {
            *sides.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    let e0 = sides.values().filter(|&&m| m == 1).count();
    let f = region.len();

    let eps_f64 = crate::exact::rational_to_f64(eps);
    let preconditions_met = match check_theorem_t(tiling, eps_f64, m_bound) {
        Ok(cert) => !cert
            .violations
            .iter()
            .any(|v| v.condition == Condition::M1 || v.condition == Condition::M2),
        Err(_) => false,
    };

    // f * eps <= 6 M^2 * e0 exactly.
    let lhs = BigRational::from_integer(BigInt::from(f as i64)) * eps.clone();
    let rhs = BigRational::from_integer(BigInt::from(6 * (m_bound * m_bound) as i64))
        * BigRational::from_integer(BigInt::from(e0 as i64));
    Ok(IsoperimetricReport {
        boundary_edges: e0,
        triangles: f,
        eps: eps.clone(),
        m_bound,
        bound_holds: lhs <= rhs,
        preconditions_met,
    })
}
