//! Origin-normalizing isometries.
//!
//! Matrices act on homogeneous *row* vectors, `p' = p · M`, and are only
//! defined up to a positive scalar; they are stored with `M[0][0] = 1`.
//! Every isometry built here is block diagonal, `diag(1, B)`, so on the
//! affine chart it is the linear map `v ↦ v · B`.
//!
//! `to_origin(a)` is the composition `T · Rx · Rz · Rx⁻¹`:
//!
//! * `T`  fibre translation, scales `a` onto the level set `Q = 1`;
//! * `Rx` rotation about the x axis taking `a` into the `[x, y]` plane;
//! * `Rz` the base-surface motion taking that point to `(1,1,0,0)`: a
//!   rotation of the `(x, y)` block for S²×R, a Lorentz boost of the
//!   `(x, y)` block for H²×R;
//! * `Rx⁻¹` undoes the first rotation, so the plane through `E₀`, `A₁` and
//!   `a` is mapped to itself.

use nalgebra::{Matrix3, Matrix4, RowVector4, Vector3};

use crate::error::{GeomError, Result};
use crate::geometry::{GeometryKind, ModelPoint};
use crate::numerics::Tolerances;

/// A projective isometry normalized so that `M[0][0] = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryMatrix(Matrix4<f64>);

impl IsometryMatrix {
    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    /// Builds `diag(1, lᵀ)` from a linear map acting on column vectors.
    fn from_column_map(l: Matrix3<f64>) -> Self {
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(1, 1).copy_from(&l.transpose());
        Self(m)
    }

    /// Wraps and renormalizes a raw matrix. `m[0][0]` must be positive.
    pub fn from_matrix(m: Matrix4<f64>) -> Result<Self> {
        if m[(0, 0)].is_nan() || m[(0, 0)] <= 0.0 {
            return Err(GeomError::Degenerate(
                "isometry matrix must have a positive (0,0) entry".into(),
            ));
        }
        Ok(Self(m / m[(0, 0)]))
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// The 3×3 block acting on Cartesian row vectors.
    pub fn linear_block(&self) -> Matrix3<f64> {
        self.0.fixed_view::<3, 3>(1, 1).into_owned()
    }

    /// `self` followed by `next` (row-vector convention).
    pub fn then(&self, next: &IsometryMatrix) -> IsometryMatrix {
        let m = self.0 * next.0;
        Self(m / m[(0, 0)])
    }

    pub fn inverse(&self) -> Result<IsometryMatrix> {
        let inv = self
            .0
            .try_inverse()
            .ok_or_else(|| GeomError::Degenerate("singular isometry matrix".into()))?;
        Self::from_matrix(inv)
    }

    /// Maps a tangent vector (Cartesian components) through the differential.
    pub fn push_forward(&self, h: &Vector3<f64>) -> Vector3<f64> {
        (h.transpose() * self.linear_block()).transpose()
    }
}

fn check_member(kind: GeometryKind, p: &ModelPoint) -> Result<()> {
    if p.is_member(kind) {
        Ok(())
    } else {
        Err(GeomError::Domain(format!("{p} is not a point of {kind}")))
    }
}

/// Fibre translation onto the level set `Q = 1` (zero fibre coordinate).
pub fn fibre_translation(kind: GeometryKind, a: &ModelPoint) -> Result<IsometryMatrix> {
    check_member(kind, a)?;
    let s = 1.0 / kind.fibre_scale_sq(&a.cartesian()).sqrt();
    Ok(IsometryMatrix::from_column_map(Matrix3::from_diagonal_element(s)))
}

/// Rotation about the x axis taking `(y, z)` to `(√(y² + z²), 0)`.
///
/// Points on the x axis are fixed by every such rotation; the identity is
/// returned for them. The same Euclidean rotation is an isometry of both
/// geometries.
pub fn rotation_x(_kind: GeometryKind, p: &ModelPoint) -> IsometryMatrix {
    let rho = p.y().hypot(p.z());
    if rho == 0.0 {
        return IsometryMatrix::identity();
    }
    let (c, s) = (p.y() / rho, p.z() / rho);
    #[rustfmt::skip]
    let l = Matrix3::new(
        1.0, 0.0, 0.0,
        0.0, c,   s,
        0.0, -s,  c,
    );
    IsometryMatrix::from_column_map(l)
}

/// Base-surface motion of the `[x, y]` plane taking `p` to `(1,1,0,0)`.
///
/// `p` must lie in the `[x, y]` plane. It is expected to sit on the level set
/// `Q = 1`; any remaining fibre offset is divided out, so the returned map
/// fixes the fibre.
pub fn rotation_z(kind: GeometryKind, p: &ModelPoint) -> Result<IsometryMatrix> {
    check_member(kind, p)?;
    if p.z().abs() > Tolerances::STANDARD.plane {
        return Err(GeomError::Precondition(format!("{p} is not in the [x, y] plane")));
    }
    let (x, y) = (p.x(), p.y());
    #[rustfmt::skip]
    let l = match kind {
        GeometryKind::SphereTimesR => {
            let n = x.hypot(y);
            let (c, s) = (x / n, y / n);
            Matrix3::new(
                c,   s,   0.0,
                -s,  c,   0.0,
                0.0, 0.0, 1.0,
            )
        }
        GeometryKind::HyperbolicTimesR => {
            let n = ((x - y) * (x + y)).sqrt();
            let (ch, sh) = (x / n, y / n);
            Matrix3::new(
                ch,  -sh, 0.0,
                -sh, ch,  0.0,
                0.0, 0.0, 1.0,
            )
        }
    };
    Ok(IsometryMatrix::from_column_map(l))
}

/// The isometry `T · Rx · Rz · Rx⁻¹` mapping `a` to the base point.
pub fn to_origin(kind: GeometryKind, a: &ModelPoint) -> Result<IsometryMatrix> {
    check_member(kind, a)?;
    if *a == ModelPoint::base() {
        return Ok(IsometryMatrix::identity());
    }
    let t = fibre_translation(kind, a)?;
    let a_t = apply(&t, a)?;
    let rx = rotation_x(kind, &a_t);
    let a_tx = apply(&rx, &a_t)?;
    // Rx leaves a rounding-level z behind; the rotation lands exactly in the plane.
    let a_tx = ModelPoint::from_cartesian(Vector3::new(a_tx.x(), a_tx.y(), 0.0));
    let rz = rotation_z(kind, &a_tx)?;
    let rx_inv = rx.inverse()?;
    Ok(t.then(&rx).then(&rz).then(&rx_inv))
}

/// Row-vector action followed by renormalization to `x⁰ = 1`.
pub fn apply(m: &IsometryMatrix, p: &ModelPoint) -> Result<ModelPoint> {
    let h = p.homogeneous();
    let image = RowVector4::new(h[0], h[1], h[2], h[3]) * m.0;
    if image[0].is_nan() || image[0] <= 0.0 {
        return Err(GeomError::Degenerate(format!(
            "image of {p} has x0 = {} <= 0",
            image[0]
        )));
    }
    Ok(ModelPoint::from_cartesian(Vector3::new(
        image[1] / image[0],
        image[2] / image[0],
        image[3] / image[0],
    )))
}

/// Closed-form vertex images under the origin-normalizing isometries.
///
/// These are independent algebraic routes to the same images produced by
/// [`to_origin`] and [`apply`]. `a2` is the vertex being moved to the base
/// point in [`images_under_second`]; `a3` is moved in [`images_under_third`].
/// The third vertex must lie in the `[x, y]` plane (`z₃ = 0`), the
/// configuration the formulas are written for.
pub mod closed_form {
    use super::*;

    /// Images `(A₁², A₃²)` of the base point and of `a3` under `to_origin(a2)`.
    pub fn images_under_second(
        kind: GeometryKind,
        a2: &ModelPoint,
        a3: &ModelPoint,
    ) -> Result<(ModelPoint, ModelPoint)> {
        check_member(kind, a2)?;
        check_member(kind, a3)?;
        if a3.z() != 0.0 {
            return Err(GeomError::Precondition("third vertex must have z = 0".into()));
        }
        let (x2, y2, z2) = (a2.x(), a2.y(), a2.z());
        let (x3, y3) = (a3.x(), a3.y());
        let q = kind.fibre_scale_sq(&a2.cartesian());
        let sq = q.sqrt();
        let rho2 = y2 * y2 + z2 * z2;
        let a1 = Vector3::new(x2 / q, -y2 / q, -z2 / q);
        let mixed_x = match kind {
            GeometryKind::SphereTimesR => x2 * x3 + y2 * y3,
            GeometryKind::HyperbolicTimesR => x2 * x3 - y2 * y3,
        };
        let a3_img = Vector3::new(
            mixed_x / q,
            (y3 * z2 * z2 * sq + x2 * y2 * y2 * y3 - x3 * y2.powi(3) - x3 * y2 * z2 * z2) / (rho2 * q),
            -(z2 * (y3 * y2 * (sq - x2) + x3 * y2 * y2 + x3 * z2 * z2)) / (rho2 * q),
        );
        Ok((ModelPoint::from_cartesian(a1), ModelPoint::from_cartesian(a3_img)))
    }

    /// Images `(A₁³, A₂³)` of the base point and of `a2` under `to_origin(a3)`.
    pub fn images_under_third(
        kind: GeometryKind,
        a2: &ModelPoint,
        a3: &ModelPoint,
    ) -> Result<(ModelPoint, ModelPoint)> {
        check_member(kind, a2)?;
        check_member(kind, a3)?;
        if a3.z() != 0.0 {
            return Err(GeomError::Precondition("third vertex must have z = 0".into()));
        }
        let (x2, y2, z2) = (a2.x(), a2.y(), a2.z());
        let (x3, y3) = (a3.x(), a3.y());
        let (q3, mixed_x) = match kind {
            GeometryKind::SphereTimesR => (x3 * x3 + y3 * y3, x2 * x3 + y2 * y3),
            GeometryKind::HyperbolicTimesR => (x3 * x3 - y3 * y3, x2 * x3 - y2 * y3),
        };
        let a1 = Vector3::new(x3 / q3, -y3 / q3, 0.0);
        let a2_img = Vector3::new(mixed_x / q3, (x3 * y2 - x2 * y3) / q3, z2 / q3.sqrt());
        Ok((ModelPoint::from_cartesian(a1), ModelPoint::from_cartesian(a2_img)))
    }

    /// The S²×R matrix of `to_origin(a)` as typeset in the literature, entry
    /// for entry (row-vector convention). Requires `(y, z) ≠ (0, 0)`.
    ///
    /// Kept verbatim for comparison; see [`published_matrix_discrepancies`].
    pub fn published_s2r_matrix(a: &ModelPoint) -> Matrix4<f64> {
        let (x, y, z) = (a.x(), a.y(), a.z());
        let q = x * x + y * y + z * z;
        let sq = q.sqrt();
        let r = y * y + z * z;
        #[rustfmt::skip]
        let m = Matrix4::new(
            1.0, 0.0,   0.0,                                 0.0,
            0.0, x / q, -y / q,                              -z / q,
            0.0, y / q, (y * y * x + z * z * sq) / (q * r),  -y * z * (-x + sq) / (q * r),
            0.0, z / q, y * z * (-x + sq) / (q * r),         (z * z * x + y * y * sq) / (q * r),
        );
        m
    }

    /// One entry where the composed matrix and the published one disagree.
    #[derive(Debug, Clone, Copy, PartialEq)]
    pub struct EntryDiscrepancy {
        pub row: usize,
        pub col: usize,
        pub composed: f64,
        pub published: f64,
    }

    /// Entries of `to_origin(S²×R, a)` that differ from the published matrix
    /// by more than `tol`.
    pub fn published_matrix_discrepancies(a: &ModelPoint, tol: f64) -> Result<Vec<EntryDiscrepancy>> {
        let composed = *to_origin(GeometryKind::SphereTimesR, a)?.matrix();
        let published = published_s2r_matrix(a);
        let mut out = Vec::new();
        for row in 0..4 {
            for col in 0..4 {
                let (c, p) = (composed[(row, col)], published[(row, col)]);
                if (c - p).abs() > tol {
                    out.push(EntryDiscrepancy {
                        row,
                        col,
                        composed: c,
                        published: p,
                    });
                }
            }
        }
        Ok(out)
    }
}
