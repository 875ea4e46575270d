//! Triangle tilings of Aleksandrov surfaces: per-vertex total angles,
//! per-triangle angular curvature, cluster assignments, and the condition
//! checkers built on them.

mod checks;
mod constants;
mod half_sheet;
mod tlg;

pub use checks::{
    check_final_tiling_theorem, check_theorem_t, comb_isoperimetric_check,
    euler_boundary_identity, Condition, EulerReport, IsoperimetricReport, TilingCertificate,
    Violation,
};
pub use constants::{constant_ledger, ConstantLedger, LedgerEntry};
pub use half_sheet::{half_sheet_curvature_identity, HalfSheetIdentity};
pub use tlg::{parse_tlg, serialize_tlg};

use std::collections::BTreeMap;
use std::f64::consts::PI;
use thiserror::Error;

/// Total angle at a vertex; infinite at vertices at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TotalAngle {
    Finite(f64),
    Infinite,
}

impl TotalAngle {
    pub fn as_f64(self) -> f64 {
        match self {
            TotalAngle::Finite(t) => t,
            TotalAngle::Infinite => f64::INFINITY,
        }
    }
}

/// Raw triangle data: vertex ids, corner angles at those vertices, side
/// lengths (v1v2, v2v3, v3v1), model curvature, optional interior curvature
/// mass and per-side left turns.
#[derive(Clone, Debug)]
pub struct RawTriangle {
    pub id: String,
    pub vertices: [String; 3],
    pub angles: [f64; 3],
    pub sides: [f64; 3],
    pub k: f64,
    pub omega: Option<f64>,
    pub left_turns: [f64; 3],
}

#[derive(Clone, Debug, Default)]
pub struct RawTiling {
    pub vertices: Vec<(String, TotalAngle)>,
    pub triangles: Vec<RawTriangle>,
    pub clusters: Vec<(String, Vec<String>)>,
}

#[derive(Debug, Error)]
pub enum TilingError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown triangle {0}")]
    UnknownTriangle(String),
    #[error("invalid tiling: {0}")]
    Invalid(String),
    #[error("triangle {0} has no cluster assignment")]
    MissingCluster(String),
    #[error("region is not simply connected: {0}")]
    NotSimplyConnected(String),
    #[error("domain error: {0}")]
    Domain(String),
}

/// Validated tiling with id-resolved triangles.
#[derive(Clone, Debug)]
pub struct Tiling {
    vertex_ids: Vec<String>,
    total_angles: Vec<TotalAngle>,
    tri_ids: Vec<String>,
    /// Per-triangle vertex indices into `vertex_ids`.
    tri_vertices: Vec<[usize; 3]>,
    tri_angles: Vec<[f64; 3]>,
    tri_sides: Vec<[f64; 3]>,
    tri_k: Vec<f64>,
    tri_omega: Vec<Option<f64>>,
    tri_left_turns: Vec<[f64; 3]>,
    /// cluster id -> triangle indices; a triangle appears in at most one.
    clusters: BTreeMap<String, Vec<usize>>,
}

impl Tiling {
    pub fn from_raw(raw: &RawTiling) -> Result<Self, TilingError> {
        let mut order: Vec<usize> = (0..raw.vertices.len()).collect();
        order.sort_by(|&a, &b| raw.vertices[a].0.cmp(&raw.vertices[b].0));
        let vertex_ids: Vec<String> = order.iter().map(|&i| raw.vertices[i].0.clone()).collect();
        let total_angles: Vec<TotalAngle> =
            order.iter().map(|&i| raw.vertices[i].1).collect();
        for w in vertex_ids.windows(2) {
            if w[0] == w[1] {
                return Err(TilingError::Invalid(format!("vertex id {} repeated", w[0])));
            }
        }
        for (id, t) in &raw.vertices {
            if let TotalAngle::Finite(t) = t {
                if !(*t > 0.0) {
                    return Err(TilingError::Invalid(format!(
                        "total angle at {id} must be positive"
                    )));
                }
            }
        }
        let index: BTreeMap<&str, usize> =
            vertex_ids.iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect();

        let mut tri_order: Vec<usize> = (0..raw.triangles.len()).collect();
        tri_order.sort_by(|&a, &b| raw.triangles[a].id.cmp(&raw.triangles[b].id));
        let mut tri_ids = Vec::new();
        let mut tri_vertices = Vec::new();
        let mut tri_angles = Vec::new();
        let mut tri_sides = Vec::new();
        let mut tri_k = Vec::new();
        let mut tri_omega = Vec::new();
        let mut tri_left_turns = Vec::new();
        for &i in &tri_order {
            let t = &raw.triangles[i];
            if tri_ids.last() == Some(&t.id) {
                return Err(TilingError::Invalid(format!("triangle id {} repeated", t.id)));
            }
            let mut vs = [0usize; 3];
            for (j, vid) in t.vertices.iter().enumerate() {
                vs[j] = *index
                    .get(vid.as_str())
                    .ok_or_else(|| TilingError::UnknownVertex(vid.clone()))?;
            }
            for a in t.angles {
                if !(a > 0.0 && a < PI) {
                    return Err(TilingError::Invalid(format!(
                        "triangle {} corner angle {a} outside (0, pi)",
                        t.id
                    )));
                }
            }
            for s in t.sides {
                if !(s > 0.0) {
                    return Err(TilingError::Invalid(format!(
                        "triangle {} side length {s} must be positive",
                        t.id
                    )));
                }
            }
            tri_ids.push(t.id.clone());
            tri_vertices.push(vs);
            tri_angles.push(t.angles);
            tri_sides.push(t.sides);
            tri_k.push(t.k);
            tri_omega.push(t.omega);
            tri_left_turns.push(t.left_turns);
        }

        let tri_index: BTreeMap<&str, usize> =
            tri_ids.iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect();
        let mut clusters = BTreeMap::new();
        let mut assigned = vec![false; tri_ids.len()];
        for (cid, members) in &raw.clusters {
            let mut ixs = Vec::new();
            for tid in members {
                let ix = *tri_index
                    .get(tid.as_str())
                    .ok_or_else(|| TilingError::UnknownTriangle(tid.clone()))?;
                if assigned[ix] {
                    return Err(TilingError::Invalid(format!(
                        "triangle {tid} assigned to more than one cluster"
                    )));
                }
                assigned[ix] = true;
                ixs.push(ix);
            }
            ixs.sort_unstable();
            if clusters.insert(cid.clone(), ixs).is_some() {
                return Err(TilingError::Invalid(format!("cluster id {cid} repeated")));
            }
        }
        Ok(Tiling {
            vertex_ids,
            total_angles,
            tri_ids,
            tri_vertices,
            tri_angles,
            tri_sides,
            tri_k,
            tri_omega,
            tri_left_turns,
            clusters,
        })
    }

    pub fn to_raw(&self) -> RawTiling {
        RawTiling {
            vertices: self
                .vertex_ids
                .iter()
                .cloned()
                .zip(self.total_angles.iter().copied())
                .collect(),
            triangles: (0..self.tri_ids.len())
                .map(|i| RawTriangle {
                    id: self.tri_ids[i].clone(),
                    vertices: self.tri_vertices[i]
                        .map(|v| self.vertex_ids[v].clone()),
                    angles: self.tri_angles[i],
                    sides: self.tri_sides[i],
                    k: self.tri_k[i],
                    omega: self.tri_omega[i],
                    left_turns: self.tri_left_turns[i],
                })
                .collect(),
            clusters: self
                .clusters
                .iter()
                .map(|(cid, ixs)| {
                    (cid.clone(), ixs.iter().map(|&i| self.tri_ids[i].clone()).collect())
                })
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.tri_ids.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_ids.binary_search_by(|p| p.as_str().cmp(id)).ok()
    }

    pub fn triangle_index(&self, id: &str) -> Option<usize> {
        self.tri_ids.iter().position(|t| t == id)
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertex_ids[v]
    }

    pub fn triangle_id(&self, t: usize) -> &str {
        &self.tri_ids[t]
    }

    pub fn triangle_vertices(&self, t: usize) -> [usize; 3] {
        self.tri_vertices[t]
    }

    pub fn triangle_angles(&self, t: usize) -> [f64; 3] {
        self.tri_angles[t]
    }

    pub fn triangle_sides(&self, t: usize) -> [f64; 3] {
        self.tri_sides[t]
    }

    pub fn triangle_k(&self, t: usize) -> f64 {
        self.tri_k[t]
    }

    pub fn triangle_omega(&self, t: usize) -> Option<f64> {
        self.tri_omega[t]
    }

    pub fn clusters(&self) -> &BTreeMap<String, Vec<usize>> {
        &self.clusters
    }

    /// Declared total angle at a vertex.
    pub fn total_angle(&self, v: usize) -> Result<TotalAngle, TilingError> {
        self.total_angles
            .get(v)
            .copied()
            .ok_or_else(|| TilingError::UnknownVertex(format!("#{v}")))
    }

    /// Sum of incident corner angles at a vertex (the operational total
    /// angle; equals the declared one at interior finite vertices of a full
    /// tiling).
    pub fn incident_angle_sum(&self, v: usize) -> f64 {
        let mut sum = 0.0;
        for t in 0..self.tri_ids.len() {
            for (j, &w) in self.tri_vertices[t].iter().enumerate() {
                if w == v {
                    sum += self.tri_angles[t][j];
                }
            }
        }
        sum
    }

    /// Angular curvature K = 2*pi * sum_i theta_i / T(v_i) - pi, with
    /// theta/inf = 0.
    pub fn angular_curvature(&self, t: usize) -> Result<f64, TilingError> {
        if t >= self.tri_ids.len() {
            return Err(TilingError::UnknownTriangle(format!("#{t}")));
        }
        let mut weighted = 0.0;
        for (j, &v) in self.tri_vertices[t].iter().enumerate() {
            match self.total_angles[v] {
                TotalAngle::Finite(total) => weighted += self.tri_angles[t][j] / total,
                TotalAngle::Infinite => {}
            }
        }
        Ok(2.0 * PI * weighted - PI)
    }

    /// Gauss-Bonnet residual for constant-curvature triangles with zero left
    /// turns and a supplied interior mass: (sum theta - pi) - omega.
    pub fn gauss_bonnet_residual(&self, t: usize) -> Option<f64> {
        let omega = self.tri_omega[t]?;
        let turn: f64 = self.tri_left_turns[t].iter().sum();
        let theta: f64 = self.tri_angles[t].iter().sum();
        Some(theta - PI - turn - omega)
    }

    /// Triangle adjacency across shared sides (unordered vertex pairs).
    pub fn triangle_adjacency(&self) -> Vec<Vec<usize>> {
        let mut by_side: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for t in 0..self.tri_ids.len() {
            let vs = self.tri_vertices[t];
            for (a, b) in [(vs[0], vs[1]), (vs[1], vs[2]), (vs[2], vs[0])] {
                let key = (a.min(b), a.max(b));
                by_side.entry(key).or_default().push(t);
            }
        }
        let mut adj = vec![Vec::new(); self.tri_ids.len()];
        for (_, ts) in by_side {
            for i in 0..ts.len() {
                for j in (i + 1)..ts.len() {
                    adj[ts[i]].push(ts[j]);
                    adj[ts[j]].push(ts[i]);
                }
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        adj
    }
}

#[cfg(test)]
mod tests;
