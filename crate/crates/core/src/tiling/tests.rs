use super::*;
use num_rational::BigRational;
use std::collections::BTreeSet;

/// Fan of n triangles around a center vertex with the given corner angle at
/// every corner, unit sides, curvature k, and declared total angles.
fn fan(n: usize, angle: f64, k: f64, center_total: TotalAngle, ring_total: TotalAngle) -> RawTiling {
    let mut raw = RawTiling::default();
    raw.vertices.push(("c".into(), center_total));
    for i in 0..n {
        raw.vertices.push((format!("r{i}"), ring_total));
    }
    for i in 0..n {
        let j = (i + 1) % n;
        raw.triangles.push(RawTriangle {
            id: format!("t{i}"),
            vertices: ["c".into(), format!("r{i}"), format!("r{j}")],
            angles: [angle, angle, angle],
            sides: [1.0, 1.0, 1.0],
            k,
            omega: None,
            left_turns: [0.0; 3],
        });
        raw.clusters.push((format!("k{i}"), vec![format!("t{i}")]));
    }
    raw
}

#[test]
fn total_angle_six_equilateral_is_two_pi() {
    let raw = fan(
        6,
        PI / 3.0,
        0.0,
        TotalAngle::Finite(2.0 * PI),
        TotalAngle::Finite(2.0 * PI),
    );
    let tiling = Tiling::from_raw(&raw).unwrap();
    let c = tiling.vertex_index("c").unwrap();
    assert!((tiling.incident_angle_sum(c) - 2.0 * PI).abs() < 1e-12);
    assert_eq!(tiling.total_angle(c).unwrap(), TotalAngle::Finite(2.0 * PI));
}

#[test]
fn total_angle_branch_vertex_and_infinity() {
    let mut raw = fan(
        6,
        PI / 3.0,
        0.0,
        TotalAngle::Finite(4.0 * PI),
        TotalAngle::Finite(2.0 * PI),
    );
    raw.vertices.push(("far".into(), TotalAngle::Infinite));
    let tiling = Tiling::from_raw(&raw).unwrap();
    let c = tiling.vertex_index("c").unwrap();
    assert_eq!(tiling.total_angle(c).unwrap(), TotalAngle::Finite(4.0 * PI));
    let far = tiling.vertex_index("far").unwrap();
    assert_eq!(tiling.total_angle(far).unwrap(), TotalAngle::Infinite);
}

#[test]
fn angular_curvature_cases() {
    // Euclidean triangle with all total angles 2*pi: K = 0.
    let raw = fan(
        6,
        PI / 3.0,
        0.0,
        TotalAngle::Finite(2.0 * PI),
        TotalAngle::Finite(2.0 * PI),
    );
    let tiling = Tiling::from_raw(&raw).unwrap();
    assert!(tiling.angular_curvature(0).unwrap().abs() < 1e-12);

    // Spherical octant (angles pi/2), total angles 2*pi: K = pi/2, the
    // Girard area.
    let mut raw = RawTiling::default();
    for id in ["a", "b", "c"] {
        raw.vertices.push((id.into(), TotalAngle::Finite(2.0 * PI)));
    }
    raw.triangles.push(RawTriangle {
        id: "oct".into(),
        vertices: ["a".into(), "b".into(), "c".into()],
        angles: [PI / 2.0; 3],
        sides: [PI / 2.0; 3],
        k: 1.0,
        omega: Some(PI / 2.0),
        left_turns: [0.0; 3],
    });
    raw.clusters.push(("k0".into(), vec!["oct".into()]));
    let tiling = Tiling::from_raw(&raw).unwrap();
    assert!((tiling.angular_curvature(0).unwrap() - PI / 2.0).abs() < 1e-12);
    assert!(tiling.gauss_bonnet_residual(0).unwrap().abs() < 1e-12);

    // Euclidean triangle with all total angles 4*pi: K = -pi/2.
    let raw = fan(
        6,
        PI / 3.0,
        0.0,
        TotalAngle::Finite(4.0 * PI),
        TotalAngle::Finite(4.0 * PI),
    );
    let tiling = Tiling::from_raw(&raw).unwrap();
    assert!((tiling.angular_curvature(0).unwrap() + PI / 2.0).abs() < 1e-12);
}

#[test]
fn angular_curvature_monotone_in_total_angle() {
    let mut last = f64::INFINITY;
    for t in [2.0, 2.5, 3.0, 4.0, 8.0] {
        let raw = fan(
            3,
            PI / 3.0,
            0.0,
            TotalAngle::Finite(t * PI),
            TotalAngle::Finite(2.0 * PI),
        );
        let tiling = Tiling::from_raw(&raw).unwrap();
        let k = tiling.angular_curvature(0).unwrap();
        assert!(k < last, "K must decrease as the total angle grows");
        last = k;
    }
}

#[test]
fn check_theorem_t_hyperbolic_fan() {
    // Hyperbolic-plane equilateral triangles with angle 2*pi/7, seven around
    // each vertex: K = 6*pi/7 - pi = -pi/7 per triangle.
    let raw = fan(
        7,
        2.0 * PI / 7.0,
        -1.0,
        TotalAngle::Finite(2.0 * PI),
        TotalAngle::Finite(2.0 * PI),
    );
    let tiling = Tiling::from_raw(&raw).unwrap();
    let cert = check_theorem_t(&tiling, 1.0 / 7.0, 1).unwrap();
    assert!(cert.hyperbolic, "violations: {:?}", cert.violations);
    for c in &cert.clusters {
        assert!((c.curvature_sum + PI / 7.0).abs() < 1e-12);
    }
    // Annotation: k <= 0 with unit sides in [eps, M].
    assert!(cert.annotation.is_some());
}

#[test]
fn check_theorem_t_flat_fan_violates_m2() {
    let raw = fan(
        6,
        PI / 3.0,
        0.0,
        TotalAngle::Finite(2.0 * PI),
        TotalAngle::Finite(2.0 * PI),
    );
    let tiling = Tiling::from_raw(&raw).unwrap();
    let cert = check_theorem_t(&tiling, 0.1, 1).unwrap();
    assert!(!cert.hyperbolic);
    assert_eq!(cert.violated_conditions(), vec![Condition::M2]);
}

#[test]
fn check_theorem_t_r2_boundary_case() {
    // Spherical triangle with perimeter exactly 2*pi*k^(-1/2) violates (R2)
    // for every eps > 0.
    let mut raw = RawTiling::default();
    for id in ["a", "b", "c"] {
        raw.vertices.push((id.into(), TotalAngle::Finite(8.0 * PI)));
    }
    raw.triangles.push(RawTriangle {
        id: "big".into(),
        vertices: ["a".into(), "b".into(), "c".into()],
        angles: [PI / 2.0, PI / 2.0, PI - 0.2],
        sides: [PI, PI / 2.0, PI / 2.0],
        k: 1.0,
        omega: None,
        left_turns: [0.0; 3],
    });
    raw.clusters.push(("k0".into(), vec!["big".into()]));
    let tiling = Tiling::from_raw(&raw).unwrap();
    let cert = check_theorem_t(&tiling, 0.3, 1).unwrap();
    assert!(cert.violated_conditions().contains(&Condition::R2));
}

#[test]
fn check_theorem_t_missing_cluster() {
    let mut raw = fan(
        3,
        PI / 3.0,
        0.0,
        TotalAngle::Finite(2.0 * PI),
        TotalAngle::Finite(2.0 * PI),
    );
    raw.clusters.pop();
    let tiling = Tiling::from_raw(&raw).unwrap();
    assert!(matches!(check_theorem_t(&tiling, 0.1, 1), Err(TilingError::MissingCluster(_))));
}

#[test]
fn check_theorem_t_invariant_under_relabeling() {
    let raw = fan(
        7,
        2.0 * PI / 7.0,
        -1.0,
        TotalAngle::Finite(2.0 * PI),
        TotalAngle::Finite(2.0 * PI),
    );
    let mut relabeled = raw.clone();
    for (i, t) in relabeled.triangles.iter_mut().enumerate() {
        t.id = format!("zz{}", 100 - i);
    }
    // Rebuild cluster membership against the new ids.
    relabeled.clusters = relabeled
        .triangles
        .iter()
        .enumerate()
        .map(|(i, t)| (format!("qq{}", 50 - i), vec![t.id.clone()]))
        .collect();
    let a = check_theorem_t(&Tiling::from_raw(&raw).unwrap(), 1.0 / 7.0, 1).unwrap();
    let b = check_theorem_t(&Tiling::from_raw(&relabeled).unwrap(), 1.0 / 7.0, 1).unwrap();
    assert_eq!(a.hyperbolic, b.hyperbolic);
    assert_eq!(a.violated_conditions(), b.violated_conditions());
}

#[test]
fn final_tiling_theorem_negative_and_flat() {
    // Uniformly curved fan: every cluster sum is negative enough.
    let raw = fan(
        7,
        2.0 * PI / 7.0,
        -1.0,
        TotalAngle::Finite(2.0 * PI),
        TotalAngle::Finite(2.0 * PI),
    );
    let tiling = Tiling::from_raw(&raw).unwrap();
    let minimal = PI / 7.0;
    let cert = check_final_tiling_theorem(&tiling, minimal * 2.0 * 0.9, 2).unwrap();
    assert!(cert.hyperbolic, "violations: {:?}", cert.violations);
    for c in &cert.clusters {
        assert!(c.size >= 2 && c.size <= 2 * 3 * 2 * 2);
    }

    // Flat tiling: K = 0, conditions violated.
    let raw = fan(
        6,
        PI / 3.0,
        0.0,
        TotalAngle::Finite(2.0 * PI),
        TotalAngle::Finite(2.0 * PI),
    );
    let tiling = Tiling::from_raw(&raw).unwrap();
    let cert = check_final_tiling_theorem(&tiling, 0.1, 2).unwrap();
    assert!(!cert.hyperbolic);
    assert_eq!(cert.violated_conditions(), vec![Condition::M2]);
}

#[test]
fn final_tiling_theorem_small_component_fallback() {
    // Below the partition threshold: a 3-triangle component with M = 5 is
    // checked directly as one cluster.
    let raw = fan(
        3,
        PI / 4.0,
        -1.0,
        TotalAngle::Finite(2.0 * PI),
        TotalAngle::Finite(2.0 * PI),
    );
    let tiling = Tiling::from_raw(&raw).unwrap();
    let cert = check_final_tiling_theorem(&tiling, 0.2, 5).unwrap();
    assert_eq!(cert.clusters.len(), 1);
    assert_eq!(cert.clusters[0].size, 3);
    assert!(cert.hyperbolic);
}

#[test]
fn euler_identity_single_triangle_and_fan() {
    let raw = fan(
        6,
        PI / 3.0,
        0.0,
        TotalAngle::Finite(2.0 * PI),
        TotalAngle::Finite(2.0 * PI),
    );
    let tiling = Tiling::from_raw(&raw).unwrap();

    let one = BTreeSet::from([0usize]);
    let report = euler_boundary_identity(&tiling, &one).unwrap();
    assert_eq!(report, EulerReport {
        boundary_edges: 3,
        triangles: 1,
        interior_vertices: 0,
        residual: 0,
    });

    let all: BTreeSet<usize> = (0..6).collect();
    let report = euler_boundary_identity(&tiling, &all).unwrap();
    assert_eq!(report, EulerReport {
        boundary_edges: 6,
        triangles: 6,
        interior_vertices: 1,
        residual: 0,
    });
}

#[test]
fn euler_identity_rejects_pinch() {
    // Two triangles sharing only one vertex.
    let mut raw = RawTiling::default();
    for id in ["m", "a", "b", "x", "y"] {
        raw.vertices.push((id.into(), TotalAngle::Finite(2.0 * PI)));
    }
    for (tid, u, v) in [("t0", "a", "b"), ("t1", "x", "y")] {
        raw.triangles.push(RawTriangle {
            id: tid.into(),
            vertices: ["m".into(), u.into(), v.into()],
            angles: [PI / 3.0; 3],
            sides: [1.0; 3],
            k: 0.0,
            omega: None,
            left_turns: [0.0; 3],
        });
    }
    let tiling = Tiling::from_raw(&raw).unwrap();
    let both: BTreeSet<usize> = [0, 1].into_iter().collect();
    assert!(matches!(
        euler_boundary_identity(&tiling, &both),
        Err(TilingError::NotSimplyConnected(_))
    ));
}

#[test]
fn isoperimetric_check_single_triangle_and_flat_flag() {
    use num_bigint::BigInt;
    let eps = BigRational::new(BigInt::from(1), BigInt::from(11));

    // Negatively curved fan (declared total angle 11*pi/5 at every vertex):
    // K = 2*pi*(pi / (11*pi/5)) - pi = 10*pi/11 - pi = -pi/11.
    let raw = fan(
        7,
        PI / 3.0,
        0.0,
        TotalAngle::Finite(11.0 * PI / 5.0),
        TotalAngle::Finite(11.0 * PI / 5.0),
    );
    let tiling = Tiling::from_raw(&raw).unwrap();
    let one = BTreeSet::from([0usize]);
    let report = comb_isoperimetric_check(&tiling, &one, &eps, 1).unwrap();
    assert!(report.bound_holds, "f = 1 passes trivially");
    assert!(report.preconditions_met, "M1 and M2 hold on this tiling");

    // Flat fan: the precondition flag must drop.
    let raw = fan(
        6,
        PI / 3.0,
        0.0,
        TotalAngle::Finite(2.0 * PI),
        TotalAngle::Finite(2.0 * PI),
    );
    let flat = Tiling::from_raw(&raw).unwrap();
    let one = BTreeSet::from([0usize]);
    let report = comb_isoperimetric_check(&flat, &one, &eps, 1).unwrap();
    assert!(!report.preconditions_met);
}

#[test]
fn tlg_round_trip() {
    let raw = fan(
        5,
        PI / 3.0,
        -1.0,
        TotalAngle::Finite(2.0 * PI),
        TotalAngle::Infinite,
    );
    let text = serialize_tlg(&raw);
    let reparsed = parse_tlg(&text).unwrap();
    assert_eq!(serialize_tlg(&reparsed), text);
    let tiling = Tiling::from_raw(&reparsed).unwrap();
    assert_eq!(tiling.triangle_count(), 5);
}

#[test]
fn tlg_parse_error_position() {
    let e = parse_tlg("vertex a 6.28\ntri t a b\n").unwrap_err();
    assert_eq!(e.line, 2);
}

#[test]
fn tiling_validation_errors() {
    let mut raw = RawTiling::default();
    raw.vertices.push(("a".into(), TotalAngle::Finite(2.0 * PI)));
    raw.triangles.push(RawTriangle {
        id: "t".into(),
        vertices: ["a".into(), "a".into(), "missing".into()],
        angles: [1.0; 3],
        sides: [1.0; 3],
        k: 0.0,
        omega: None,
        left_turns: [0.0; 3],
    });
    assert!(matches!(Tiling::from_raw(&raw), Err(TilingError::UnknownVertex(_))));

    let mut raw = RawTiling::default();
    for id in ["a", "b", "c"] {
        raw.vertices.push((id.into(), TotalAngle::Finite(2.0 * PI)));
    }
    raw.triangles.push(RawTriangle {
        id: "t".into(),
        vertices: ["a".into(), "b".into(), "c".into()],
        angles: [0.0, 1.0, 1.0],
        sides: [1.0; 3],
        k: 0.0,
        omega: None,
        left_turns: [0.0; 3],
    });
    assert!(matches!(Tiling::from_raw(&raw), Err(TilingError::Invalid(_))));
}
