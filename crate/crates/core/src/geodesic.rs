//! Closed-form geodesics from the base point and their inverse problem.
//!
//! A unit-speed geodesic leaving `A₁ = (1,1,0,0)` is fixed by two direction
//! angles `(u, v)` and its arc length `τ`:
//!
//! ```text
//! S²×R:  (e^{τ sin v} cos(τ cos v),  e^{τ sin v} sin(τ cos v) cos u,  e^{τ sin v} sin(τ cos v) sin u)
//! H²×R:  (e^{τ sin v} cosh(τ cos v), e^{τ sin v} sinh(τ cos v) cos u, e^{τ sin v} sinh(τ cos v) sin u)
//! ```
//!
//! `τ sin v` is the fibre displacement and `τ cos v` the distance travelled
//! on the base surface, so the inverse recovers both from the fibre scale
//! `½·log Q` and the base-surface angle/distance of the endpoint.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geometry::{GeometryKind, ModelPoint};
use crate::isometry;
use crate::numerics::Tolerances;

/// Direction angles and arc length of a geodesic from the base point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicParams {
    pub u: f64,
    pub v: f64,
    pub tau: f64,
}

impl GeodesicParams {
    /// Range-checked constructor: `u ∈ (-π, π]`, `v ∈ [-π/2, π/2]`, `τ ≥ 0`.
    pub fn new(u: f64, v: f64, tau: f64) -> Result<Self> {
        let ok = u > -PI && u <= PI && (-FRAC_PI_2..=FRAC_PI_2).contains(&v) && tau >= 0.0;
        if !ok || !tau.is_finite() {
            return Err(GeomError::Domain(format!(
                "geodesic parameters out of range: u={u}, v={v}, tau={tau}"
            )));
        }
        Ok(Self { u, v, tau })
    }

    /// Accepts any finite angles and folds them into the ranges of
    /// [`GeodesicParams::new`] without changing the tangent direction:
    /// `v` past `±π/2` is reflected to `±π − v` with `u` turned by `π`.
    pub fn canonical(u: f64, v: f64, tau: f64) -> Result<Self> {
        if !(u.is_finite() && v.is_finite()) {
            return Err(GeomError::Domain(format!(
                "geodesic angles must be finite: u={u}, v={v}"
            )));
        }
        let mut v = (v + PI).rem_euclid(2.0 * PI) - PI;
        let mut u = u;
        if v.abs() > FRAC_PI_2 {
            v = v.signum() * PI - v;
            u += PI;
        }
        let u = PI - (PI - u).rem_euclid(2.0 * PI);
        Self::new(u, v, tau)
    }

    /// Same direction, different length.
    pub fn with_tau(self, tau: f64) -> Self {
        Self { tau, ..self }
    }
}

/// Unit tangent at the base point, in Euclidean model coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangentVector(pub Vector3<f64>);

impl TangentVector {
    pub fn dot(&self, other: &TangentVector) -> f64 {
        self.0.dot(&other.0)
    }

    /// Angle in `[0, π]`. The metric is Euclidean at the base point.
    pub fn angle_to(&self, other: &TangentVector) -> f64 {
        self.dot(other).clamp(-1.0, 1.0).acos()
    }
}

/// Which closed-form branch of the inverse problem an endpoint falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndpointCase {
    /// `y, z ≠ 0`, off the unit level set `Q = 1`.
    Generic,
    /// `y = 0, z ≠ 0`, off the unit level set: `u = ±π/2`.
    Meridian,
    /// `y = 0, z ≠ 0` on the unit level set: `v = 0`.
    MeridianUnitLevel,
    /// `y = z = 0`: the geodesic runs along the fibre (or, in S²×R with `x < 0`,
    /// to the antipodal fibre).
    FibreAxis,
    /// S²×R only, `x = y = 0`: the base-surface distance is exactly `π/2`.
    PolarAxis,
    /// `(y, z) ≠ 0` on the unit level set with `y ≠ 0`: `v = 0`.
    UnitLevel,
}

/// Evaluates the closed-form geodesic at arc length `g.tau`.
pub fn geodesic_point(kind: GeometryKind, g: &GeodesicParams) -> Result<ModelPoint> {
    let lift = (g.tau * g.v.sin()).exp();
    let s = g.tau * g.v.cos();
    let (radial, lateral) = match kind {
        GeometryKind::SphereTimesR => (s.cos(), s.sin()),
        GeometryKind::HyperbolicTimesR => (s.cosh(), s.sinh()),
    };
    let v = Vector3::new(radial, lateral * g.u.cos(), lateral * g.u.sin()) * lift;
    let p = ModelPoint::from_cartesian(v);
    if !v.iter().all(|c| c.is_finite()) || !p.is_member(kind) {
        return Err(GeomError::Degenerate(format!(
            "geodesic u={}, v={}, tau={} leaves the representable model",
            g.u, g.v, g.tau
        )));
    }
    Ok(p)
}

/// Classifies the endpoint by the branch structure of the inverse problem.
pub fn endpoint_case(kind: GeometryKind, p: &ModelPoint) -> EndpointCase {
    let (x, y, z) = (p.x(), p.y(), p.z());
    let unit_level = (kind.fibre_scale_sq(&p.cartesian()) - 1.0).abs() <= Tolerances::STANDARD.coordinate;
    if y == 0.0 && z == 0.0 {
        EndpointCase::FibreAxis
    } else if kind == GeometryKind::SphereTimesR && x == 0.0 && y == 0.0 {
        EndpointCase::PolarAxis
    } else if y == 0.0 {
        if unit_level {
            EndpointCase::MeridianUnitLevel
        } else {
            EndpointCase::Meridian
        }
    } else if unit_level {
        EndpointCase::UnitLevel
    } else {
        EndpointCase::Generic
    }
}

/// Solves the inverse problem: the parameters of the (shortest) geodesic from
/// the base point to `p`.
pub fn geodesic_params(kind: GeometryKind, p: &ModelPoint) -> Result<GeodesicParams> {
    resolve_endpoint(kind, p).map(|(g, _)| g)
}

/// Like [`geodesic_params`] but also reports the branch that was used.
///
/// Every branch is a special case of one formula: with fibre displacement
/// `L = ½·log Q` and base-surface distance `A`, the parameters are
/// `v = atan2(L, A)`, `τ = √(L² + A²)` and `u = atan2(z, y)`. `A` is the
/// spherical angle `atan2(|(y,z)|, x) ∈ [0, π]` (the principal, shortest arc)
/// resp. the hyperbolic distance `asinh(|(y,z)| / √Q)`. The branches only pin
/// the angles that the formula leaves to the sign of a zero.
pub fn resolve_endpoint(kind: GeometryKind, p: &ModelPoint) -> Result<(GeodesicParams, EndpointCase)> {
    if !p.is_member(kind) {
        return Err(GeomError::Domain(format!("{p} is not a point of {kind}")));
    }
    if *p == ModelPoint::base() {
        return Err(GeomError::Domain("the base point has no geodesic parameters".into()));
    }
    let c = p.cartesian();
    let q = kind.fibre_scale_sq(&c);
    if q.is_nan() || q <= 0.0 {
        return Err(GeomError::Unreachable(format!(
            "{p} has non-positive quadratic form {q}"
        )));
    }
    let rho = c.y.hypot(c.z);
    let lift = 0.5 * q.ln();
    let across = match kind {
        GeometryKind::SphereTimesR => rho.atan2(c.x),
        GeometryKind::HyperbolicTimesR => (rho / q.sqrt()).asinh(),
    };
    let case = endpoint_case(kind, p);
    let (u, v) = match case {
        EndpointCase::FibreAxis => (0.0, lift.atan2(across)),
        EndpointCase::PolarAxis => (FRAC_PI_2.copysign(c.z), lift.atan2(FRAC_PI_2)),
        EndpointCase::Meridian => (FRAC_PI_2.copysign(c.z), lift.atan2(across)),
        EndpointCase::MeridianUnitLevel => (FRAC_PI_2.copysign(c.z), 0.0),
        EndpointCase::UnitLevel => (c.z.atan2(c.y), 0.0),
        EndpointCase::Generic => (c.z.atan2(c.y), lift.atan2(across)),
    };
    // atan2 returns -π for (−0, negative); fold into (−π, π].
    let u = if u <= -PI { u + 2.0 * PI } else { u };
    let tau = match case {
        EndpointCase::MeridianUnitLevel | EndpointCase::UnitLevel => across,
        _ => lift.hypot(across),
    };
    if tau == 0.0 {
        return Err(GeomError::Domain("the base point has no geodesic parameters".into()));
    }
    Ok((GeodesicParams { u, v, tau }, case))
}

/// Unit tangent of the geodesic with direction `(u, v)` at the base point.
pub fn tangent_of(g: &GeodesicParams) -> TangentVector {
    let (sv, cv) = g.v.sin_cos();
    let (su, cu) = g.u.sin_cos();
    TangentVector(Vector3::new(sv, cv * cu, cv * su))
}

/// Geodesic distance between two model points.
///
/// `p1` is moved to the base point by [`isometry::to_origin`], and the
/// arc length of the geodesic to the image of `p2` is returned. In S²×R
/// this is the shortest geodesic.
pub fn distance(kind: GeometryKind, p1: &ModelPoint, p2: &ModelPoint) -> Result<f64> {
    for p in [p1, p2] {
        if !p.is_member(kind) {
            return Err(GeomError::Domain(format!("{p} is not a point of {kind}")));
        }
    }
    if p1 == p2 {
        return Ok(0.0);
    }
    let image = isometry::apply(&isometry::to_origin(kind, p1)?, p2)?;
    if image == ModelPoint::base() {
        return Ok(0.0);
    }
    Ok(geodesic_params(kind, &image)?.tau)
}

/// `n` points at equal arc-length steps along the geodesic, from the base
/// point to `geodesic_point(kind, g)`.
pub fn sample_curve(kind: GeometryKind, g: &GeodesicParams, n: usize) -> Result<Vec<ModelPoint>> {
    if n < 2 {
        return Err(GeomError::Precondition(format!("need at least 2 samples, got {n}")));
    }
    let step = g.tau / (n - 1) as f64;
    (0..n)
        .map(|i| {
            let tau = if i == n - 1 { g.tau } else { step * i as f64 };
            geodesic_point(kind, &g.with_tau(tau))
        })
        .collect()
}
