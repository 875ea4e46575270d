//! The half-sheet curvature identity: a half sheet of a class-F_q surface is
//! modeled as a hemisphere fanned into q spherical triangles from the pole,
//! with the equator points carrying total angles 2*pi*m_j. The sum of
//! angular curvatures over the fan equals pi times the vertex excess, and
//! the computation here is exact in rational multiples of pi.

use super::{RawTiling, RawTriangle, Tiling, TilingError, TotalAngle};
use crate::exact::PiRational;
use crate::line_complex::FaceSize;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::f64::consts::PI;

/// Exact evaluation of the identity, plus the f64 hemisphere tiling that
/// realizes it geometrically.
#[derive(Clone, Debug)]
pub struct HalfSheetIdentity {
    pub q: usize,
    /// Sum of angular curvatures over the q fan triangles.
    pub sum_curvature: PiRational,
    /// pi * E_p from the excess formula.
    pub pi_excess: PiRational,
    /// sum_curvature - pi_excess; zero.
    pub residual: PiRational,
    pub tiling: Tiling,
}

fn reciprocal(m: FaceSize) -> Result<BigRational, TilingError> {
    m.reciprocal()
        .ok_or_else(|| TilingError::Domain("face sizes must be finite or infinite".into()))
}

/// Build the pole-fan hemisphere for face sizes (m_1..m_q) and evaluate both
/// sides of the identity exactly. Requires q >= 3; the q = 2 hemisphere
/// degenerates into lunes, not triangles.
pub fn half_sheet_curvature_identity(
    q: usize,
    face_sizes: &[FaceSize],
) -> Result<HalfSheetIdentity, TilingError> {
    if q < 3 {
        return Err(TilingError::Domain(format!(
            "q = {q} < 3: the hemisphere fan needs genuine triangles"
        )));
    }
    if face_sizes.len() != q {
        return Err(TilingError::Domain(format!(
            "expected {q} face sizes, got {}",
            face_sizes.len()
        )));
    }

    let rational = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));

    // Exact route. Corner weights theta/T as plain rationals:
    //   pole:    (2*pi/q) / (2*pi)      = 1/q
    //   equator: (pi/2)   / (2*pi*m_j)  = 1/(4 m_j), zero for infinite m.
    let mut sum_curvature = PiRational::zero();
    for j in 0..q {
        let m_j = reciprocal(face_sizes[j])?;
        let m_next = reciprocal(face_sizes[(j + 1) % q])?;
        let weight = rational(1, q as i64)
            + m_j * rational(1, 4)
            + m_next * rational(1, 4);
        // K = pi * (2 * weight - 1).
        sum_curvature += PiRational(weight * rational(2, 1) - rational(1, 1));
    }
    let mut excess = BigRational::zero();
    for m in face_sizes {
        excess += reciprocal(*m)?;
    }
    excess = excess - rational(q as i64, 1) + rational(2, 1);
    let pi_excess = PiRational(excess);
    let residual = sum_curvature.clone() - pi_excess.clone();

    // Geometric realization on the unit sphere: pole angle 2*pi/q, base
    // angles pi/2, pole sides pi/2, equator side 2*pi/q, area 2*pi/q each.
    let mut raw = RawTiling::default();
    raw.vertices.push(("pole".into(), TotalAngle::Finite(2.0 * PI)));
    for (j, m) in face_sizes.iter().enumerate() {
        let total = match m {
            FaceSize::Finite(m) => TotalAngle::Finite(2.0 * PI * *m as f64),
            FaceSize::Infinite => TotalAngle::Infinite,
            FaceSize::Unknown => unreachable!("rejected above"),
        };
        raw.vertices.push((format!("nu{j}"), total));
    }
    for j in 0..q {
        let next = (j + 1) % q;
        raw.triangles.push(RawTriangle {
            id: format!("fan{j}"),
            vertices: ["pole".into(), format!("nu{j}"), format!("nu{next}")],
            angles: [2.0 * PI / q as f64, PI / 2.0, PI / 2.0],
            sides: [PI / 2.0, 2.0 * PI / q as f64, PI / 2.0],
            k: 1.0,
            omega: Some(2.0 * PI / q as f64),
            left_turns: [0.0; 3],
        });
        raw.clusters.push((format!("c{j}"), vec![format!("fan{j}")]));
    }
    let tiling = Tiling::from_raw(&raw)?;

    Ok(HalfSheetIdentity { q, sum_curvature, pi_excess, residual, tiling })
}
