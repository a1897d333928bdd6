//! Interior angles of geodesic triangles.
//!
//! The angle at a vertex is measured after an isometry moves that vertex to
//! the base point, where the metric is Euclidean: it is the angle between
//! the unit tangents of the two sides leaving the base point.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geodesic::{geodesic_params, tangent_of, TangentVector};
use crate::geometry::{GeometryKind, ModelPoint};
use crate::isometry::{apply, to_origin};
use crate::numerics::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Vertex {
    A1,
    A2,
    A3,
}

impl Vertex {
    pub const ALL: [Vertex; 3] = [Vertex::A1, Vertex::A2, Vertex::A3];

    fn index(self) -> usize {
        self as usize
    }

    fn others(self) -> (Vertex, Vertex) {
        match self {
            Vertex::A1 => (Vertex::A2, Vertex::A3),
            Vertex::A2 => (Vertex::A1, Vertex::A3),
            Vertex::A3 => (Vertex::A1, Vertex::A2),
        }
    }
}

/// A geodesic triangle, normalized so that its first vertex is the base point.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicTriangle {
    kind: GeometryKind,
    vertices: [ModelPoint; 3],
    input: [ModelPoint; 3],
}

impl GeodesicTriangle {
    /// Checks the vertices and moves `a1` to the base point.
    pub fn new(kind: GeometryKind, a1: ModelPoint, a2: ModelPoint, a3: ModelPoint) -> Result<Self> {
        let input = [a1, a2, a3];
        for p in &input {
            if !p.is_member(kind) {
                return Err(GeomError::Domain(format!("{p} is not a point of {kind}")));
            }
        }
        let m = to_origin(kind, &a1)?;
        let vertices = [ModelPoint::base(), apply(&m, &a2)?, apply(&m, &a3)?];
        let tol = Tolerances::STANDARD.coordinate;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if vertices[i].max_abs_diff(&vertices[j]) <= tol {
                return Err(GeomError::Degenerate(format!(
                    "vertices A{} and A{} coincide",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(Self { kind, vertices, input })
    }

    pub fn kind(&self) -> GeometryKind {
        self.kind
    }

    /// The vertices after normalization (`A₁` is the base point).
    pub fn vertices(&self) -> &[ModelPoint; 3] {
        &self.vertices
    }

    /// The vertices as given to the constructor.
    pub fn input_vertices(&self) -> &[ModelPoint; 3] {
        &self.input
    }

    fn vertex(&self, v: Vertex) -> &ModelPoint {
        &self.vertices[v.index()]
    }

    /// Unit tangent at the base point toward `target`.
    fn tangent_toward(&self, target: &ModelPoint) -> Result<TangentVector> {
        Ok(tangent_of(&geodesic_params(self.kind, target)?))
    }

    /// The two unit tangents at `at` (moved to the base point) along the sides.
    fn side_tangents(&self, at: Vertex) -> Result<(TangentVector, TangentVector)> {
        let (j, k) = at.others();
        let m = to_origin(self.kind, self.vertex(at))?;
        let pj = apply(&m, self.vertex(j))?;
        let pk = apply(&m, self.vertex(k))?;
        Ok((self.tangent_toward(&pj)?, self.tangent_toward(&pk)?))
    }

    /// Interior angle at vertex `at`, in `[0, π]`.
    pub fn vertex_angle(&self, at: Vertex) -> Result<f64> {
        let (tj, tk) = self.side_tangents(at)?;
        Ok(tj.angle_to(&tk))
    }

    /// All three angles and their sum.
    ///
    /// Fails with [`GeomError::Consistency`] if the tangent bookkeeping breaks
    /// antipodality (see [`GeodesicTriangle::antipodality_defect`]).
    pub fn angle_sum(&self) -> Result<TriangleAngles> {
        let defect = self.antipodality_defect()?;
        if defect > Tolerances::STANDARD.antipodal {
            return Err(GeomError::Consistency(format!(
                "side tangents are not antipodal (defect {defect:e})"
            )));
        }
        let w1 = self.vertex_angle(Vertex::A1)?;
        let w2 = self.vertex_angle(Vertex::A2)?;
        let w3 = self.vertex_angle(Vertex::A3)?;
        Ok(TriangleAngles {
            w1,
            w2,
            w3,
            sum: w1 + w2 + w3,
        })
    }

    /// The six labelled side tangents at the base point.
    ///
    /// Label `(i, j)` is the tangent toward the image of `Aᵢ` under the
    /// isometry normalizing `Aⱼ`; `j = 0` means no isometry (the tangent
    /// toward `Aᵢ` from `A₁` itself).
    pub fn tangent_endpoints(&self) -> Result<[TangentEndpoint; 6]> {
        let m2 = to_origin(self.kind, self.vertex(Vertex::A2))?;
        let m3 = to_origin(self.kind, self.vertex(Vertex::A3))?;
        let base = ModelPoint::base();
        let toward = |p: ModelPoint| self.tangent_toward(&p);
        Ok([
            TangentEndpoint {
                label: (1, 3),
                vec: toward(apply(&m3, &base)?)?,
            },
            TangentEndpoint {
                label: (1, 2),
                vec: toward(apply(&m2, &base)?)?,
            },
            TangentEndpoint {
                label: (2, 3),
                vec: toward(apply(&m3, self.vertex(Vertex::A2))?)?,
            },
            TangentEndpoint {
                label: (3, 2),
                vec: toward(apply(&m2, self.vertex(Vertex::A3))?)?,
            },
            TangentEndpoint {
                label: (3, 0),
                vec: toward(*self.vertex(Vertex::A3))?,
            },
            TangentEndpoint {
                label: (2, 0),
                vec: toward(*self.vertex(Vertex::A2))?,
            },
        ])
    }

    /// Antipodality defect of the three side pairs.
    ///
    /// The pairs `(t₂⁰, t₁²)` and `(t₃⁰, t₁³)` each describe one side through
    /// `A₁` seen from both ends, with the normalizing isometry a transvection
    /// along that side, so they are exactly opposite; their contribution is
    /// `|t + t'|`. The pair `(t₃², t₂³)` is seen through transvections along
    /// two different sides and is opposite only up to a rotation about the
    /// fibre axis (see [`GeodesicTriangle::holonomy_angle`]); its contribution
    /// compares the fibre components and the horizontal lengths. For
    /// triangles coplanar with `E₀` the rotation vanishes and all three pairs
    /// are exactly opposite.
    pub fn antipodality_defect(&self) -> Result<f64> {
        let t = self.tangent_endpoints()?;
        let find = |label: (u8, u8)| t.iter().find(|e| e.label == label).map(|e| e.vec.0).unwrap();
        let exact = [((2, 0), (1, 2)), ((3, 0), (1, 3))]
            .iter()
            .map(|&(a, b)| (find(a) + find(b)).norm())
            .fold(0.0, f64::max);
        let (p, q) = (find((3, 2)), find((2, 3)));
        let fibre = (p.x + q.x).abs();
        let horizontal = (p.y.hypot(p.z) - q.y.hypot(q.z)).abs();
        Ok(exact.max(fibre).max(horizontal))
    }

    /// Angle of the rotation about the fibre axis taking `−t₂³` to `t₃²`,
    /// in `(−π, π]`. Zero for triangles coplanar with `E₀`.
    pub fn holonomy_angle(&self) -> Result<f64> {
        let t = self.tangent_endpoints()?;
        let (p, q) = (t[3].vec.0, -t[2].vec.0);
        Ok((q.y * p.z - q.z * p.y).atan2(q.y * p.y + q.z * p.z))
    }

    /// Whether the Euclidean plane of the vertices passes through `E₀`.
    pub fn coplanar_with_center(&self) -> bool {
        is_coplanar_with_center(&self.input, Tolerances::STANDARD.coplanar)
    }

    /// The trichotomy class, cross-checked against the computed angle sum.
    pub fn classify(&self) -> Result<AngleSumClass> {
        let tol = Tolerances::STANDARD.classification;
        let sum = self.angle_sum()?.sum;
        let class = if self.coplanar_with_center() {
            AngleSumClass::SumEqualsPi
        } else {
            match self.kind {
                GeometryKind::SphereTimesR => AngleSumClass::SumAbovePi,
                GeometryKind::HyperbolicTimesR => AngleSumClass::SumBelowPi,
            }
        };
        let consistent = match class {
            AngleSumClass::SumEqualsPi => (sum - PI).abs() <= tol,
            AngleSumClass::SumAbovePi => sum >= PI - tol,
            AngleSumClass::SumBelowPi => sum <= PI + tol,
        };
        if !consistent {
            return Err(GeomError::Consistency(format!(
                "angle sum {sum} contradicts class {class} in {}",
                self.kind
            )));
        }
        Ok(class)
    }
}

/// Relative triple-product test `det[a1; a2; a3] / (|a1||a2||a3|) ≤ tol`.
pub fn is_coplanar_with_center(v: &[ModelPoint; 3], tol: f64) -> bool {
    let (a, b, c) = (v[0].cartesian(), v[1].cartesian(), v[2].cartesian());
    let scale = a.norm() * b.norm() * c.norm();
    a.dot(&b.cross(&c)).abs() <= tol * scale
}

/// A labelled unit tangent at the base point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentEndpoint {
    pub label: (u8, u8),
    pub vec: TangentVector,
}

/// Interior angles `ω₁, ω₂, ω₃` and their sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleAngles {
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
    pub sum: f64,
}

impl TriangleAngles {
    pub fn as_array(&self) -> [f64; 3] {
        [self.w1, self.w2, self.w3]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AngleSumClass {
    SumEqualsPi,
    SumAbovePi,
    SumBelowPi,
}

impl AngleSumClass {
    /// Short label used in reports.
    pub fn label(self) -> &'static str {
        match self {
            AngleSumClass::SumEqualsPi => "equal",
            AngleSumClass::SumAbovePi => "above",
            AngleSumClass::SumBelowPi => "below",
        }
    }
}

impl fmt::Display for AngleSumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}
