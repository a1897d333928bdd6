//! Coordinate types, model membership and the ambient metric tensors.
//!
//! Both geometries live in the affine chart `x⁰ = 1` of projective space.
//! The S²×R model is affine space minus the center `E₀ = (1,0,0,0)`; the
//! H²×R model is the open cone `-x² + y² + z² < 0, x > 0`. In both models
//! the fibre coordinate of a point is `t = ½·log Q` where `Q` is the
//! geometry's quadratic form `x² + y² + z²` resp. `x² - y² - z²`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Which of the two product geometries an operation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeometryKind {
    #[serde(rename = "s2r")]
    SphereTimesR,
    #[serde(rename = "h2r")]
    HyperbolicTimesR,
}

impl GeometryKind {
    pub const ALL: [GeometryKind; 2] = [GeometryKind::SphereTimesR, GeometryKind::HyperbolicTimesR];

    pub fn short_name(self) -> &'static str {
        match self {
            GeometryKind::SphereTimesR => "s2r",
            GeometryKind::HyperbolicTimesR => "h2r",
        }
    }

    /// The quadratic form whose square root is `e^t`.
    ///
    /// For H²×R the form is evaluated as `(x - ρ)(x + ρ)` with `ρ = |(y, z)|`,
    /// which avoids one rounding in the cancellation near the cone.
    pub fn fibre_scale_sq(self, v: &Vector3<f64>) -> f64 {
        match self {
            GeometryKind::SphereTimesR => v.norm_squared(),
            GeometryKind::HyperbolicTimesR => {
                let rho = v.y.hypot(v.z);
                (v.x - rho) * (v.x + rho)
            }
        }
    }

    fn admits(self, v: &Vector3<f64>) -> bool {
        match self {
            GeometryKind::SphereTimesR => v.norm_squared() > 0.0,
            GeometryKind::HyperbolicTimesR => v.x > 0.0 && -v.x * v.x + v.y * v.y + v.z * v.z < 0.0,
        }
    }
}

impl fmt::Display for GeometryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryKind::SphereTimesR => f.write_str("S2xR"),
            GeometryKind::HyperbolicTimesR => f.write_str("H2xR"),
        }
    }
}

impl FromStr for GeometryKind {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s2r" | "s2xr" | "sphere" => Ok(GeometryKind::SphereTimesR),
            "h2r" | "h2xr" | "hyperbolic" => Ok(GeometryKind::HyperbolicTimesR),
            other => Err(GeomError::Domain(format!("unknown geometry '{other}'"))),
        }
    }
}

/// A point of the affine model, stored normalized to `x⁰ = 1`.
///
/// The type itself does not remember which geometry it belongs to; use
/// [`ModelPoint::new`] or [`ModelPoint::from_homogeneous`] to get a
/// membership-checked point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelPoint {
    coords: Vector3<f64>,
}

impl ModelPoint {
    /// The base point `A₁ = (1,1,0,0)` from which geodesics are parametrized.
    pub fn base() -> Self {
        Self::from_cartesian(Vector3::new(1.0, 0.0, 0.0))
    }

    /// A membership-checked point from Cartesian coordinates.
    pub fn new(kind: GeometryKind, x: f64, y: f64, z: f64) -> Result<Self> {
        Self::from_homogeneous(kind, [1.0, x, y, z])
    }

    /// Normalizes `(x⁰:x¹:x²:x³)` to `x⁰ = 1` and checks membership.
    pub fn from_homogeneous(kind: GeometryKind, h: [f64; 4]) -> Result<Self> {
        if !contains(kind, h) {
            return Err(GeomError::Domain(format!(
                "({}, {}, {}, {}) is not a point of {kind}",
                h[0], h[1], h[2], h[3]
            )));
        }
        Ok(Self::from_cartesian(Vector3::new(
            h[1] / h[0],
            h[2] / h[0],
            h[3] / h[0],
        )))
    }

    /// Wraps Cartesian coordinates without a membership check.
    pub fn from_cartesian(coords: Vector3<f64>) -> Self {
        Self { coords }
    }

    pub fn x(&self) -> f64 {
        self.coords.x
    }

    pub fn y(&self) -> f64 {
        self.coords.y
    }

    pub fn z(&self) -> f64 {
        self.coords.z
    }

    pub fn cartesian(&self) -> Vector3<f64> {
        self.coords
    }

    pub fn homogeneous(&self) -> [f64; 4] {
        [1.0, self.coords.x, self.coords.y, self.coords.z]
    }

    pub fn is_member(&self, kind: GeometryKind) -> bool {
        kind.admits(&self.coords)
    }

    /// Largest absolute coordinate difference.
    pub fn max_abs_diff(&self, other: &ModelPoint) -> f64 {
        (self.coords - other.coords).amax()
    }
}

impl fmt::Display for ModelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1, {}, {}, {})", self.coords.x, self.coords.y, self.coords.z)
    }
}

/// Total membership predicate on raw homogeneous 4-tuples.
///
/// Boundary points (the center `E₀`, the cone surface) are rejected, as is
/// any tuple with `x⁰ ≤ 0` or non-finite components.
pub fn contains(kind: GeometryKind, h: [f64; 4]) -> bool {
    if h[0].is_nan() || h[0] <= 0.0 || h.iter().any(|c| !c.is_finite()) {
        return false;
    }
    kind.admits(&Vector3::new(h[1] / h[0], h[2] / h[0], h[3] / h[0]))
}

/// Metric coefficients `g_ij` in the Cartesian chart `(dx, dy, dz)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricTensor(Matrix3<f64>);

impl MetricTensor {
    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    /// `aⁱ g_ij bʲ`.
    pub fn inner(&self, a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
        a.dot(&(self.0 * b))
    }

    pub fn quadratic_form(&self, h: &Vector3<f64>) -> f64 {
        self.inner(h, h)
    }

    /// Angle between two tangent vectors measured with this metric.
    pub fn angle(&self, a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
        let c = self.inner(a, b) / (self.quadratic_form(a) * self.quadratic_form(b)).sqrt();
        c.clamp(-1.0, 1.0).acos()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.0.symmetric_eigenvalues().iter().all(|&e| e > 0.0)
    }
}

/// The ambient metric at `p`.
pub fn metric_at(kind: GeometryKind, p: &ModelPoint) -> Result<MetricTensor> {
    if !p.is_member(kind) {
        return Err(GeomError::Domain(format!("{p} is not a point of {kind}")));
    }
    let (x, y, z) = (p.x(), p.y(), p.z());
    let g = match kind {
        GeometryKind::SphereTimesR => Matrix3::identity() / (x * x + y * y + z * z),
        GeometryKind::HyperbolicTimesR => {
            let d = -x * x + y * y + z * z;
            #[rustfmt::skip]
            let n = Matrix3::new(
                x * x + y * y + z * z, -2.0 * x * y,          -2.0 * x * z,
                -2.0 * x * y,          x * x + y * y - z * z, 2.0 * y * z,
                -2.0 * x * z,          2.0 * y * z,           x * x - y * y + z * z,
            );
            n / (d * d)
        }
    };
    Ok(MetricTensor(g))
}

/// Intrinsic product coordinates: fibre `t` plus polar data on the base surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum IntrinsicCoords {
    /// Geographic coordinates, `φ ∈ (-π, π]`, `θ ∈ [-π/2, π/2]`.
    Sphere { t: f64, phi: f64, theta: f64 },
    /// Cylindrical coordinates, `r ≥ 0`, `α ∈ (-π, π]`.
    Hyperbolic { t: f64, r: f64, alpha: f64 },
}

impl IntrinsicCoords {
    pub fn kind(&self) -> GeometryKind {
        match self {
            IntrinsicCoords::Sphere { .. } => GeometryKind::SphereTimesR,
            IntrinsicCoords::Hyperbolic { .. } => GeometryKind::HyperbolicTimesR,
        }
    }

    /// Inverse chart. The fibre coordinate is `½·log Q`.
    pub fn from_model(kind: GeometryKind, p: &ModelPoint) -> Result<Self> {
        if !p.is_member(kind) {
            return Err(GeomError::Domain(format!("{p} is not a point of {kind}")));
        }
        let v = p.cartesian();
        let t = 0.5 * kind.fibre_scale_sq(&v).ln();
        let rho = v.y.hypot(v.z);
        Ok(match kind {
            GeometryKind::SphereTimesR => IntrinsicCoords::Sphere {
                t,
                phi: v.y.atan2(v.x),
                theta: v.z.atan2(v.x.hypot(v.y)),
            },
            GeometryKind::HyperbolicTimesR => IntrinsicCoords::Hyperbolic {
                t,
                r: (rho / t.exp()).asinh(),
                alpha: v.z.atan2(v.y),
            },
        })
    }
}

/// Maps intrinsic coordinates into the model. Total on the documented ranges.
pub fn to_model(c: &IntrinsicCoords) -> ModelPoint {
    let v = match *c {
        IntrinsicCoords::Sphere { t, phi, theta } => {
            let e = t.exp();
            Vector3::new(
                e * phi.cos() * theta.cos(),
                e * phi.sin() * theta.cos(),
                e * theta.sin(),
            )
        }
        IntrinsicCoords::Hyperbolic { t, r, alpha } => {
            let e = t.exp();
            Vector3::new(e * r.cosh(), e * r.sinh() * alpha.cos(), e * r.sinh() * alpha.sin())
        }
    };
    ModelPoint::from_cartesian(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{E, FRAC_PI_2};

    const S: GeometryKind = GeometryKind::SphereTimesR;
    const H: GeometryKind = GeometryKind::HyperbolicTimesR;

    #[test]
    fn membership_examples() {
        assert!(contains(H, [1.0, 1.0, 0.0, 0.0]));
        assert!(!contains(H, [1.0, 1.0, 2.0, 0.0]));
        assert!(!contains(S, [1.0, 0.0, 0.0, 0.0]));
        assert!(contains(S, [2.0, 0.0, 0.0, 4.0]));
        assert!(!contains(S, [0.0, 1.0, 0.0, 0.0]));
        assert!(!contains(S, [-1.0, 1.0, 0.0, 0.0]));
        // cone surface and the lower nappe are excluded
        assert!(!contains(H, [1.0, 1.0, 1.0, 0.0]));
        assert!(!contains(H, [1.0, -2.0, 0.0, 0.0]));
        assert!(!contains(S, [1.0, f64::NAN, 0.0, 0.0]));
    }

    #[test]
    fn homogeneous_normalization() {
        let p = ModelPoint::from_homogeneous(S, [2.0, 4.0, -2.0, 6.0]).unwrap();
        assert_eq!(p.homogeneous(), [1.0, 2.0, -1.0, 3.0]);
        assert!(matches!(
            ModelPoint::from_homogeneous(H, [1.0, 1.0, 2.0, 0.0]),
            Err(GeomError::Domain(_))
        ));
    }

    #[test]
    fn metric_examples() {
        let base = ModelPoint::base();
        assert_relative_eq!(*metric_at(S, &base).unwrap().matrix(), Matrix3::identity());
        assert_relative_eq!(*metric_at(H, &base).unwrap().matrix(), Matrix3::identity());
        let p = ModelPoint::new(S, 2.0, 0.0, 0.0).unwrap();
        assert_relative_eq!(*metric_at(S, &p).unwrap().matrix(), Matrix3::identity() * 0.25);
        let outside = ModelPoint::from_cartesian(Vector3::new(1.0, 2.0, 0.0));
        assert!(matches!(metric_at(H, &outside), Err(GeomError::Domain(_))));
    }

    #[test]
    fn metric_is_positive_definite_off_axis() {
        let p = ModelPoint::new(H, 2.0, 1.5, 1.0).unwrap();
        let g = metric_at(H, &p).unwrap();
        assert!(g.is_positive_definite());
        assert_relative_eq!(*g.matrix(), g.matrix().transpose());
    }

    #[test]
    fn to_model_examples() {
        let p = to_model(&IntrinsicCoords::Sphere {
            t: 0.0,
            phi: 0.0,
            theta: 0.0,
        });
        assert_eq!(p, ModelPoint::base());
        let p = to_model(&IntrinsicCoords::Hyperbolic {
            t: 1.0,
            r: 0.0,
            alpha: 0.0,
        });
        assert_relative_eq!(p.cartesian(), Vector3::new(E, 0.0, 0.0));
        let p = to_model(&IntrinsicCoords::Sphere {
            t: 0.0,
            phi: FRAC_PI_2,
            theta: 0.0,
        });
        assert_relative_eq!(p.cartesian(), Vector3::new(0.0, 1.0, 0.0), epsilon = 1e-15);
    }

    #[test]
    fn chart_roundtrip() {
        let c = IntrinsicCoords::Hyperbolic {
            t: -0.3,
            r: 1.7,
            alpha: -2.0,
        };
        let back = IntrinsicCoords::from_model(H, &to_model(&c)).unwrap();
        match back {
            IntrinsicCoords::Hyperbolic { t, r, alpha } => {
                assert_relative_eq!(t, -0.3, epsilon = 1e-12);
                assert_relative_eq!(r, 1.7, epsilon = 1e-12);
                assert_relative_eq!(alpha, -2.0, epsilon = 1e-12);
            }
            _ => panic!("wrong chart"),
        }
    }

    #[test]
    fn geometry_names_parse() {
        assert_eq!("s2r".parse::<GeometryKind>().unwrap(), S);
        assert_eq!("H2xR".parse::<GeometryKind>().unwrap(), H);
        assert!("nil".parse::<GeometryKind>().is_err());
    }
}
