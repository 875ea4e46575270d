//! Model-triangle formulas on the unit sphere and the Euclidean plane:
//! the circumscribed-radius expression for equilateral spherical triangles,
//! an independent vector-geometry oracle for it, the maximal-side bound, the
//! isoperimetric quadratic, and the area/curvature bounds used by the
//! spherical-tiling corollary. Curvature is normalized to k in {0, 1}.

use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SphericalError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("bisection did not converge after {0} steps")]
    NoConvergence(usize),
}

/// A constant-curvature model triangle (k = 0 Euclidean, k = 1 unit sphere).
#[derive(Clone, Copy, Debug)]
pub struct ModelTriangle {
    pub k: f64,
    /// Side lengths a, b, c; the angle opposite side `sides[i]` is
    /// `angles[i]`.
    pub sides: [f64; 3],
    pub angles: [f64; 3],
    pub area: f64,
}

impl ModelTriangle {
    /// Euclidean triangle from side lengths.
    pub fn euclidean_from_sides(a: f64, b: f64, c: f64) -> Result<Self, SphericalError> {
        if !(a > 0.0 && b > 0.0 && c > 0.0) || a + b <= c || b + c <= a || c + a <= b {
            return Err(SphericalError::Domain(format!(
                "sides ({a}, {b}, {c}) do not form a triangle"
            )));
        }
        let angle = |opp: f64, s1: f64, s2: f64| {
            (((s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2)).clamp(-1.0, 1.0)).acos()
        };
        let alpha = angle(a, b, c);
        let beta = angle(b, c, a);
        let gamma = angle(c, a, b);
        let s = (a + b + c) / 2.0;
        let area = (s * (s - a) * (s - b) * (s - c)).max(0.0).sqrt();
        Ok(ModelTriangle { k: 0.0, sides: [a, b, c], angles: [alpha, beta, gamma], area })
    }

    /// Unit-sphere triangle from side lengths (spherical law of cosines).
    pub fn spherical_from_sides(a: f64, b: f64, c: f64) -> Result<Self, SphericalError> {
        if !(a > 0.0 && b > 0.0 && c > 0.0) || a + b + c >= 2.0 * PI {
            return Err(SphericalError::Domain(format!(
                "spherical sides ({a}, {b}, {c}) need perimeter < 2*pi"
            )));
        }
        if a + b <= c || b + c <= a || c + a <= b {
            return Err(SphericalError::Domain("spherical triangle inequality fails".into()));
        }
        let angle = |opp: f64, s1: f64, s2: f64| {
            let cosv = (opp.cos() - s1.cos() * s2.cos()) / (s1.sin() * s2.sin());
            cosv.clamp(-1.0, 1.0).acos()
        };
        let alpha = angle(a, b, c);
        let beta = angle(b, c, a);
        let gamma = angle(c, a, b);
        let area = alpha + beta + gamma - PI;
        Ok(ModelTriangle { k: 1.0, sides: [a, b, c], angles: [alpha, beta, gamma], area })
    }

    /// Unit-sphere triangle through three unit vectors.
    pub fn spherical_from_points(p: [[f64; 3]; 3]) -> Result<Self, SphericalError> {
        let side = |u: [f64; 3], v: [f64; 3]| dot(u, v).clamp(-1.0, 1.0).acos();
        let a = side(p[1], p[2]);
        let b = side(p[2], p[0]);
        let c = side(p[0], p[1]);
        if a == 0.0 || b == 0.0 || c == 0.0 {
            return Err(SphericalError::Domain("coincident points".into()));
        }
        let alpha = vertex_angle(p[0], p[1], p[2]);
        let beta = vertex_angle(p[1], p[2], p[0]);
        let gamma = vertex_angle(p[2], p[0], p[1]);
        let area = alpha + beta + gamma - PI;
        Ok(ModelTriangle { k: 1.0, sides: [a, b, c], angles: [alpha, beta, gamma], area })
    }

    pub fn perimeter(&self) -> f64 {
        self.sides.iter().sum()
    }

    /// Largest law-of-sines residual between side/angle pairs.
    pub fn law_of_sines_residual(&self) -> f64 {
        let ratio = |s: f64, ang: f64| {
            let d = ang.sin().max(f64::MIN_POSITIVE);
            if self.k > 0.0 {
                s.sin() / d
            } else {
                s / d
            }
        };
        let r0 = ratio(self.sides[0], self.angles[0]);
        let r1 = ratio(self.sides[1], self.angles[1]);
        let r2 = ratio(self.sides[2], self.angles[2]);
        (r0 - r1).abs().max((r1 - r2).abs()).max((r2 - r0).abs())
    }

    /// Circumscribed radius. Spherical: tan R = tan(a/2) / cos(S - alpha)
    /// with S the half-sum of angles; Euclidean: R = a / (2 sin alpha).
    pub fn circumradius(&self) -> f64 {
        if self.k > 0.0 {
            let s = (self.angles[0] + self.angles[1] + self.angles[2]) / 2.0;
            ((self.sides[0] / 2.0).tan() / (s - self.angles[0]).cos()).atan()
        } else {
            self.sides[0] / (2.0 * self.angles[0].sin())
        }
    }

    /// Angle-sum area (valid for k = 1).
    pub fn girard_area(&self) -> f64 {
        self.angles.iter().sum::<f64>() - PI
    }
}

fn dot(u: [f64; 3], v: [f64; 3]) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

fn sub_proj(u: [f64; 3], base: [f64; 3]) -> [f64; 3] {
    // Component of u orthogonal to base (base assumed unit).
    let d = dot(u, base);
    [u[0] - d * base[0], u[1] - d * base[1], u[2] - d * base[2]]
}

fn norm(u: [f64; 3]) -> f64 {
    dot(u, u).sqrt()
}

/// Angle at vertex `at` of the spherical triangle (at, p, q): the angle
/// between the tangent directions toward p and q.
fn vertex_angle(at: [f64; 3], p: [f64; 3], q: [f64; 3]) -> f64 {
    let tp = sub_proj(p, at);
    let tq = sub_proj(q, at);
    let np = norm(tp);
    let nq = norm(tq);
    if np == 0.0 || nq == 0.0 {
        return 0.0;
    }
    (dot(tp, tq) / (np * nq)).clamp(-1.0, 1.0).acos()
}

/// Circumscribed radius of the spherical equilateral triangle with angles
/// pi*q/3, shifted by eps: arctan sqrt(-cos(pi q/2) / cos^3(pi q/6)) - eps.
/// The 0/0 form at q = 3 resolves to pi/2.
pub fn r_q_eps(q: f64, eps: f64) -> Result<f64, SphericalError> {
    if !(q > 1.0 && q <= 3.0) {
        return Err(SphericalError::Domain(format!("q = {q} outside (1, 3]")));
    }
    if eps < 0.0 {
        return Err(SphericalError::Domain(format!("eps = {eps} must be >= 0")));
    }
    let unshifted = if (q - 3.0).abs() < 1e-9 {
        PI / 2.0
    } else {
        let num = -(PI * q / 2.0).cos();
        let den = (PI * q / 6.0).cos().powi(3);
        (num / den).sqrt().atan()
    };
    if eps >= unshifted {
        return Err(SphericalError::Domain(format!(
            "eps = {eps} not below the unshifted radius {unshifted}"
        )));
    }
    Ok(unshifted - eps)
}

/// Independent oracle for `r_q_eps`: place three points at spherical radius r
/// around the pole at longitudes 0, 2pi/3, 4pi/3, read the corner angle off
/// the unit-vector geometry, and bisect r until the angle matches to 1e-12.
pub fn circumradius_equilateral_oracle(angle: f64) -> Result<f64, SphericalError> {
    if !(angle > PI / 3.0 && angle < PI) {
        return Err(SphericalError::Domain(format!(
            "equilateral corner angle {angle} outside (pi/3, pi)"
        )));
    }
    let corner = |r: f64| {
        let pts = equilateral_points(r);
        vertex_angle(pts[0], pts[1], pts[2])
    };
    // corner(r) grows from pi/3 at r -> 0 to pi at r -> pi/2.
    let mut lo = 1e-9;
    let mut hi = PI / 2.0 - 1e-12;
    for _ in 0..200 {
        let mid = (lo + hi) / 2.0;
        let a = corner(mid);
        if (a - angle).abs() <= 1e-12 {
            return Ok(mid);
        }
        if a < angle {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            return Ok((lo + hi) / 2.0);
        }
    }
    Err(SphericalError::NoConvergence(200))
}

/// Three points at spherical radius r from the pole, equally spaced in
/// longitude.
pub fn equilateral_points(r: f64) -> [[f64; 3]; 3] {
    let mut pts = [[0.0; 3]; 3];
    for (i, pt) in pts.iter_mut().enumerate() {
        let phi = 2.0 * PI * i as f64 / 3.0;
        *pt = [r.sin() * phi.cos(), r.sin() * phi.sin(), r.cos()];
    }
    pts
}

/// Bound max{a, b} <= C(eps) * c for the sides adjacent to the vertex whose
/// angle gamma is at least eps (c is the side opposite that vertex).
/// C(eps) = 1/sin(eps) in the Euclidean case, pi/(sin(eps/2) sin(eps)) on the
/// sphere under the perimeter condition.
pub fn max_side_bound(tri: &ModelTriangle, eps: f64) -> Result<(f64, bool), SphericalError> {
    let gamma = tri.angles[2];
    if gamma < eps {
        return Err(SphericalError::PreconditionFailed(format!(
            "gamma = {gamma} below eps = {eps}"
        )));
    }
    if tri.k > 0.0 && tri.perimeter() > 2.0 * PI - eps {
        return Err(SphericalError::PreconditionFailed(format!(
            "perimeter {} exceeds 2*pi - eps",
            tri.perimeter()
        )));
    }
    let c_eps =
        if tri.k > 0.0 { PI / ((eps / 2.0).sin() * eps.sin()) } else { 1.0 / eps.sin() };
    let bound = c_eps * tri.sides[2];
    let holds = tri.sides[0].max(tri.sides[1]) <= bound;
    Ok((bound, holds))
}

/// The isoperimetric quadratic L^2 - 4*pi*A + k*A^2 (nonnegative on
/// curvature-at-most-k surfaces), plus the small-area flag A <= 2*pi/k used
/// to pass from it to 2*pi*A <= L^2 when k > 0.
pub fn isoperimetric_quadratic(k: f64, length: f64, area: f64) -> (f64, bool) {
    let value = length * length - 4.0 * PI * area + k * area * area;
    let small = if k > 0.0 { area <= 2.0 * PI / k } else { true };
    (value, small)
}

/// Area of the equilateral spherical triangle inscribed at circumradius r.
pub fn equilateral_area_at_circumradius(r: f64) -> f64 {
    // cos(side) = (3 cos^2 r - 1)/2; corner angle from cos A = cos a/(1+cos a).
    let cos_a = (3.0 * r.cos() * r.cos() - 1.0) / 2.0;
    let angle = (cos_a / (1.0 + cos_a)).clamp(-1.0, 1.0).acos();
    3.0 * angle - PI
}

/// Area and curvature bounds for spherical triangles with circumscribed
/// radius at most r_q_eps(q, eps): area <= pi(q-1) - eta and, for vertex
/// total angles >= 2*pi*q, angular curvature <= -eta/q. The maximal area at
/// fixed circumradius is taken at the equilateral triangle; that choice is
/// checked by sampling in the test suite, not proved.
pub fn corollary_area_and_curvature(
    q: f64,
    eps: f64,
    tri: &ModelTriangle,
) -> Result<(f64, f64), SphericalError> {
    if eps <= 0.0 {
        return Err(SphericalError::Domain(format!("eps = {eps} must be > 0")));
    }
    let radius = r_q_eps(q, eps)?;
    if tri.k <= 0.0 {
        return Err(SphericalError::PreconditionFailed("triangle must be spherical".into()));
    }
    let tri_radius = tri.circumradius();
    if tri_radius > radius + 1e-12 {
        return Err(SphericalError::PreconditionFailed(format!(
            "circumradius {tri_radius} exceeds r_q_eps = {radius}"
        )));
    }
    let max_area = equilateral_area_at_circumradius(radius);
    let eta = PI * (q - 1.0) - max_area;
    let area_bound = PI * (q - 1.0) - eta;
    if tri.area > area_bound + 1e-9 {
        return Err(SphericalError::PreconditionFailed(format!(
            "area {} exceeds the bound {area_bound}",
            tri.area
        )));
    }
    let k_bound = -eta / q;
    Ok((area_bound, k_bound))
}
