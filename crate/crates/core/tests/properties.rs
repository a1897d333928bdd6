use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Matrix3, Vector3};
use proptest::prelude::*;
use thurston_core::oracle::arc_length_quadrature;
use thurston_core::triangle::is_coplanar_with_center;
use thurston_core::*;

const S: GeometryKind = GeometryKind::SphereTimesR;
const H: GeometryKind = GeometryKind::HyperbolicTimesR;

fn kinds() -> impl Strategy<Value = GeometryKind> {
    prop_oneof![Just(S), Just(H)]
}

fn coords(kind: GeometryKind) -> BoxedStrategy<IntrinsicCoords> {
    match kind {
        S => (-1.5..1.5f64, -PI..PI, -1.4..1.4f64)
            .prop_map(|(t, phi, theta)| IntrinsicCoords::Sphere { t, phi, theta })
            .boxed(),
        H => (-1.5..1.5f64, 0.0..2.5f64, -PI..PI)
            .prop_map(|(t, r, alpha)| IntrinsicCoords::Hyperbolic { t, r, alpha })
            .boxed(),
    }
}

fn point(kind: GeometryKind) -> BoxedStrategy<ModelPoint> {
    coords(kind).prop_map(|c| to_model(&c)).boxed()
}

fn kind_and_points(n: usize) -> impl Strategy<Value = (GeometryKind, Vec<ModelPoint>)> {
    kinds().prop_flat_map(move |k| (Just(k), proptest::collection::vec(point(k), n)))
}

/// Parameters inside the region where the geodesic is the shortest one.
fn params(kind: GeometryKind, tau_max: f64) -> BoxedStrategy<GeodesicParams> {
    (-PI..PI, -1.5..1.5f64, 0.05..tau_max)
        .prop_filter("S2xR arc must stay below pi", move |&(_, v, tau)| {
            kind == H || tau * f64::cos(v) < PI - 1e-3
        })
        .prop_map(|(u, v, tau)| GeodesicParams { u, v, tau })
        .boxed()
}

/// Diagonal intrinsic metric at the given coordinates.
fn intrinsic_metric(c: &IntrinsicCoords) -> Matrix3<f64> {
    match *c {
        IntrinsicCoords::Sphere { theta, .. } => Matrix3::from_diagonal(&Vector3::new(1.0, theta.cos().powi(2), 1.0)),
        IntrinsicCoords::Hyperbolic { r, .. } => Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, r.sinh().powi(2))),
    }
}

fn shifted(c: &IntrinsicCoords, i: usize, h: f64) -> IntrinsicCoords {
    let mut a = match *c {
        IntrinsicCoords::Sphere { t, phi, theta } => [t, phi, theta],
        IntrinsicCoords::Hyperbolic { t, r, alpha } => [t, r, alpha],
    };
    a[i] += h;
    match c {
        IntrinsicCoords::Sphere { .. } => IntrinsicCoords::Sphere {
            t: a[0],
            phi: a[1],
            theta: a[2],
        },
        IntrinsicCoords::Hyperbolic { .. } => IntrinsicCoords::Hyperbolic {
            t: a[0],
            r: a[1],
            alpha: a[2],
        },
    }
}

/// Nodes and weights of n-point Gauss–Legendre quadrature on [-1, 1].
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (1..=n)
        .map(|i| {
            let mut x = (PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Length of `curve` on `[0, len]` by composite Gauss–Legendre quadrature of
/// `√(ċᵀ g ċ)`, with `ċ` from central differences.
fn metric_length(kind: GeometryKind, len: f64, curve: impl Fn(f64) -> ModelPoint) -> f64 {
    let rule = gauss_legendre(8);
    let panels = 16;
    let w = len / panels as f64;
    let h = 1e-5 * len.max(1.0);
    let mut total = 0.0;
    for k in 0..panels {
        let mid = (k as f64 + 0.5) * w;
        for &(x, wt) in &rule {
            let s = mid + 0.5 * w * x;
            let c = curve(s);
            let d = (curve(s + h).cartesian() - curve(s - h).cartesian()) / (2.0 * h);
            total += 0.5 * w * wt * metric_at(kind, &c).unwrap().quadratic_form(&d).sqrt();
        }
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn metric_is_symmetric_positive_definite((kind, p) in kind_and_points(1)) {
        let g = metric_at(kind, &p[0]).unwrap();
        prop_assert!((g.matrix() - g.matrix().transpose()).amax() <= 1e-12 * g.matrix().amax());
        prop_assert!(g.is_positive_definite());
    }

    #[test]
    fn chart_outputs_are_members(c in kinds().prop_flat_map(coords)) {
        prop_assert!(to_model(&c).is_member(c.kind()));
    }

    #[test]
    fn model_metric_pulls_back_to_the_product_metric(c in kinds().prop_flat_map(coords)) {
        let kind = c.kind();
        let h = 1e-6;
        let jac: Vec<Vector3<f64>> = (0..3)
            .map(|i| (to_model(&shifted(&c, i, h)).cartesian() - to_model(&shifted(&c, i, -h)).cartesian()) / (2.0 * h))
            .collect();
        let g = metric_at(kind, &to_model(&c)).unwrap();
        let want = intrinsic_metric(&c);
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!((g.inner(&jac[i], &jac[j]) - want[(i, j)]).abs() <= 1e-6, "{i}{j}");
            }
        }
    }

    #[test]
    fn geodesics_have_unit_speed((kind, g) in kinds().prop_flat_map(|k| (Just(k), params(k, 3.0)))) {
        let curve = sample_curve(kind, &g, 20_000).unwrap();
        prop_assert!(curve.iter().all(|p| p.is_member(kind)));
        let len = arc_length_quadrature(kind, &curve).unwrap();
        prop_assert!((len - g.tau).abs() <= 1e-7, "length {len} vs tau {}", g.tau);
    }

    #[test]
    fn geodesics_lie_in_a_plane_through_the_center((kind, g) in kinds().prop_flat_map(|k| (Just(k), params(k, 3.0)))) {
        let curve = sample_curve(kind, &g, 32).unwrap();
        for w in curve.windows(2).skip(1) {
            prop_assert!(is_coplanar_with_center(&[ModelPoint::base(), w[0], w[1]], 1e-10));
        }
    }

    #[test]
    fn inverse_reproduces_the_point((kind, p) in kind_and_points(1)) {
        let back = geodesic_point(kind, &geodesic_params(kind, &p[0]).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&p[0]) <= 1e-10 * p[0].cartesian().amax().max(1.0));
    }

    #[test]
    fn to_origin_moves_the_point_to_the_base((kind, p) in kind_and_points(1)) {
        let img = apply(&to_origin(kind, &p[0]).unwrap(), &p[0]).unwrap();
        prop_assert!(img.max_abs_diff(&ModelPoint::base()) <= 1e-10);
    }

    #[test]
    fn isometries_preserve_the_metric(
        (kind, p) in kind_and_points(2),
        h in proptest::array::uniform3(-1.0..1.0f64),
    ) {
        let h = Vector3::from(h);
        let m = to_origin(kind, &p[0]).unwrap();
        let before = metric_at(kind, &p[1]).unwrap().quadratic_form(&h);
        let after = metric_at(kind, &apply(&m, &p[1]).unwrap()).unwrap().quadratic_form(&m.push_forward(&h));
        prop_assert!((before - after).abs() <= 1e-8 * before.max(1.0), "{before} vs {after}");
    }

    #[test]
    fn distance_is_invariant_and_symmetric((kind, p) in kind_and_points(3)) {
        let m = to_origin(kind, &p[2]).unwrap();
        let d = distance(kind, &p[0], &p[1]).unwrap();
        prop_assert!((d - distance(kind, &p[1], &p[0]).unwrap()).abs() <= 1e-8);
        let moved = distance(kind, &apply(&m, &p[0]).unwrap(), &apply(&m, &p[1]).unwrap()).unwrap();
        prop_assert!((d - moved).abs() <= 1e-8);
    }

    #[test]
    fn distance_matches_quadrature_of_the_connecting_curve((kind, p) in kind_and_points(2)) {
        let m = to_origin(kind, &p[0]).unwrap();
        let back = m.inverse().unwrap();
        let g = geodesic_params(kind, &apply(&m, &p[1]).unwrap()).unwrap();
        let len = metric_length(kind, g.tau, |s| apply(&back, &geodesic_point(kind, &g.with_tau(s)).unwrap()).unwrap());
        let d = distance(kind, &p[0], &p[1]).unwrap();
        prop_assert!((len - d).abs() <= 1e-7, "quadrature {len} vs distance {d}");
    }

    #[test]
    fn relabeling_permutes_the_angles((kind, p) in kind_and_points(3)) {
        let a = GeodesicTriangle::new(kind, p[0], p[1], p[2]).unwrap().angle_sum().unwrap().as_array();
        for perm in [[1, 2, 0], [2, 0, 1], [0, 2, 1], [1, 0, 2], [2, 1, 0]] {
            let b = GeodesicTriangle::new(kind, p[perm[0]], p[perm[1]], p[perm[2]])
                .unwrap()
                .angle_sum()
                .unwrap()
                .as_array();
            for i in 0..3 {
                prop_assert!((b[i] - a[perm[i]]).abs() <= 1e-8, "{perm:?}: {b:?} vs {a:?}");
            }
        }
    }

    #[test]
    fn angles_lie_strictly_between_zero_and_pi((kind, p) in kind_and_points(3)) {
        let a = GeodesicTriangle::new(kind, p[0], p[1], p[2]).unwrap().angle_sum().unwrap();
        prop_assert!(a.as_array().iter().all(|w| *w > 0.0 && *w < PI));
        prop_assert_eq!(a.sum, a.w1 + a.w2 + a.w3);
    }

    #[test]
    fn tangents_are_unit_vectors(g in params(H, 5.0)) {
        prop_assert!((tangent_of(&g).0.norm() - 1.0).abs() <= 1e-15);
        prop_assert!(g.v.abs() < FRAC_PI_2);
    }
}
