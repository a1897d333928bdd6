//! Geodesics, isometries and interior-angle sums of geodesic triangles in the
//! product Thurston geometries S²×R and H²×R.
//!
//! Both geometries are realized in the affine chart `x⁰ = 1` of projective
//! space with Cartesian coordinates `(x, y, z)`. Geodesics are parametrized
//! from the base point `A₁ = (1,1,0,0)`; any other vertex is first moved
//! there by an origin-normalizing isometry ([`isometry::to_origin`]), so every
//! angle is measured where the metric is Euclidean.
//!
//! * [`geometry`]: coordinate types, membership, metric tensors
//! * [`geodesic`]: closed-form geodesics, their inverse, distance
//! * [`isometry`]: fibre translations, rotations, boosts and their composite
//! * [`triangle`]: interior angles, angle sums, trichotomy classification
//! * [`sweep`]: the angle-sum family along a ray and its extremum
//! * [`oracle`]: ODE integration and arc-length quadrature cross-checks
//! * [`tables`]: the reference rows and their reproduction
//! * [`verify`]: seeded property suites shared by the CLI and tests

pub mod error;
pub mod geodesic;
pub mod geometry;
pub mod isometry;
pub mod numerics;
pub mod oracle;
pub mod sampling;
pub mod sweep;
pub mod tables;
pub mod triangle;
pub mod verify;

pub use error::{GeomError, Result};
pub use geodesic::{
    distance, geodesic_params, geodesic_point, resolve_endpoint, sample_curve, tangent_of, EndpointCase,
    GeodesicParams, TangentVector,
};
pub use geometry::{contains, metric_at, to_model, GeometryKind, IntrinsicCoords, MetricTensor, ModelPoint};
pub use isometry::{apply, fibre_translation, rotation_x, rotation_z, to_origin, IsometryMatrix};
pub use numerics::{IntegratorTolerances, Tolerances};
pub use sweep::{evaluate, limits_check, ExtremumKind, GridSpacing, LimitsReport, SweepResult, SweepSpec};
pub use triangle::{AngleSumClass, GeodesicTriangle, TangentEndpoint, TriangleAngles, Vertex};
pub use verify::{run_all, run_suite, Suite, SuiteReport, VerifyConfig};
