//! Random inputs for property suites.
//!
//! All generators draw from a caller-supplied RNG so that suites are
//! reproducible from a seed.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::Vector3;
use rand::Rng;

use crate::geodesic::GeodesicParams;
use crate::geometry::{to_model, GeometryKind, IntrinsicCoords, ModelPoint};

/// Uniform `u ∈ (−π, π]`, `v ∈ (−π/2, π/2)` and `τ ∈ (0, tau_max]`.
///
/// For S²×R the draw is repeated until `τ cos v < π − 10⁻³`: beyond that
/// the base-surface arc is no longer the shortest one, and the inverse
/// problem returns a different (shorter) geodesic to the same endpoint.
pub fn random_params<R: Rng + ?Sized>(kind: GeometryKind, rng: &mut R, tau_max: f64) -> GeodesicParams {
    loop {
        let u = PI - rng.random::<f64>() * 2.0 * PI;
        let v = rng.random_range(-FRAC_PI_2..FRAC_PI_2);
        let tau = tau_max * (1.0 - rng.random::<f64>());
        if v == -FRAC_PI_2 {
            continue;
        }
        if kind == GeometryKind::SphereTimesR && tau * v.cos() >= PI - 1e-3 {
            continue;
        }
        return GeodesicParams { u, v, tau };
    }
}

/// A point with fibre coordinate in `[−1.5, 1.5]`; uniform direction on the
/// sphere factor resp. hyperbolic radius up to `2.5`.
pub fn random_point<R: Rng + ?Sized>(kind: GeometryKind, rng: &mut R) -> ModelPoint {
    let t = rng.random_range(-1.5..1.5);
    let c = match kind {
        GeometryKind::SphereTimesR => IntrinsicCoords::Sphere {
            t,
            phi: rng.random_range(-PI..PI),
            theta: rng.random_range(-1.0f64..1.0).asin(),
        },
        GeometryKind::HyperbolicTimesR => IntrinsicCoords::Hyperbolic {
            t,
            r: rng.random_range(0.0..2.5),
            alpha: rng.random_range(-PI..PI),
        },
    };
    to_model(&c)
}

/// Three model points whose Euclidean plane passes through `E₀`.
///
/// The third point is a positive combination `a·p + b·q` of two random
/// points. The H²×R domain is a convex cone, so it stays inside; on the
/// sphere factor the three directions stay within one arc shorter than `π`,
/// so the triangle is not wrapped around a great circle.
pub fn random_coplanar_triple<R: Rng + ?Sized>(kind: GeometryKind, rng: &mut R) -> [ModelPoint; 3] {
    loop {
        let p = random_point(kind, rng);
        let q = random_point(kind, rng);
        let (a, b) = (rng.random_range(0.1..2.0), rng.random_range(0.1..2.0));
        let (pc, qc) = (p.cartesian(), q.cartesian());
        if pc.normalize().dot(&qc.normalize()) < -0.999 {
            continue;
        }
        let r = ModelPoint::from_cartesian(pc * a + qc * b);
        if r.is_member(kind) {
            return [p, q, r];
        }
    }
}

/// A uniformly distributed unit vector.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> Vector3<f64> {
    let z: f64 = rng.random_range(-1.0..1.0);
    let phi = rng.random_range(-PI..PI);
    let s = (1.0 - z * z).sqrt();
    Vector3::new(s * phi.cos(), s * phi.sin(), z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle::is_coplanar_with_center;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_their_domains() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for kind in GeometryKind::ALL {
            for _ in 0..200 {
                let g = random_params(kind, &mut rng, 4.0);
                assert!(GeodesicParams::new(g.u, g.v, g.tau).is_ok());
                assert!(random_point(kind, &mut rng).is_member(kind));
                let tri = random_coplanar_triple(kind, &mut rng);
                assert!(tri.iter().all(|p| p.is_member(kind)));
                assert!(is_coplanar_with_center(&tri, 1e-12));
            }
        }
    }
}
