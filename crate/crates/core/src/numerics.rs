//! Central numerics profile.
//!
//! Every comparison threshold used by the library is collected here so a
//! single profile governs reproducibility. Test suites and the CLI read the
//! same values.

/// Tolerance profile used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Coordinate equality (point coincidence, roundtrips).
    pub coordinate: f64,
    /// Arc-length agreement between closed forms and quadrature.
    pub arc_length: f64,
    /// Relative triple-product threshold for coplanarity with the model center.
    pub coplanar: f64,
    /// Allowed disagreement between a computed angle sum and its class.
    pub classification: f64,
    /// Maximum off-plane component accepted by the z-rotation.
    pub plane: f64,
    /// Antipodality defect of paired tangent vectors.
    pub antipodal: f64,
    /// Convergence width of the golden-section refinement.
    pub extremum_width: f64,
}

impl Tolerances {
    pub const STANDARD: Tolerances = Tolerances {
        coordinate: 1e-10,
        arc_length: 1e-7,
        coplanar: 1e-10,
        classification: 1e-7,
        plane: 1e-12,
        antipodal: 1e-8,
        extremum_width: 1e-7,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// Integrator settings for the geodesic ODE oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorTolerances {
    pub relative: f64,
    pub absolute: f64,
    /// Steps whose unit-speed drift exceeds this are rejected.
    pub speed_drift: f64,
}

impl IntegratorTolerances {
    pub const STANDARD: IntegratorTolerances = IntegratorTolerances {
        relative: 1e-10,
        absolute: 1e-12,
        speed_drift: 1e-9,
    };
}

impl Default for IntegratorTolerances {
    fn default() -> Self {
        Self::STANDARD
    }
}
