//! Independent numerical checks of the closed-form geodesics.
//!
//! Geodesics are integrated as second-order ODEs with an adaptive
//! Dormand–Prince 5(4) scheme, and curve lengths are computed by quadrature
//! of the ambient metric. Neither path uses the closed forms.
//!
//! # Geodesic equations in the intrinsic charts
//!
//! S²×R, metric `dt² + cos²θ dφ² + dθ²`. The only non-zero Christoffel
//! symbols are `Γ^θ_φφ = sinθ cosθ` and `Γ^φ_φθ = Γ^φ_θφ = −tanθ`, so
//!
//! ```text
//! ẗ = 0,   φ̈ = 2 tanθ θ̇ φ̇,   θ̈ = −sinθ cosθ φ̇².
//! ```
//!
//! The chart is regular at the base point `(t, φ, θ) = 0`, where the
//! Cartesian tangent `(sin v, cos v cos u, cos v sin u)` reads
//! `(ṫ, φ̇, θ̇)` directly. It is singular at the poles `θ = ±π/2`.
//!
//! H²×R, metric `dt² + dr² + sinh²r dα²`:
//!
//! ```text
//! ẗ = 0,   r̈ = sinh r cosh r α̇²,   α̈ = −2 coth r ṙ α̇.
//! ```
//!
//! The base point is the polar origin `r = 0`. The Cartesian tangent
//! `(sin v, cos v cos u, cos v sin u)` there corresponds to the polar data
//! `α(0) = u, ṙ(0) = cos v, α̇(0) = 0`; `α̇` is then identically zero, and
//! the `coth` term is evaluated through its `2/r` leading term below
//! `r = 10⁻⁶`.
//!
//! # Geodesic equations in the Cartesian chart
//!
//! [`integrate_geodesic_cartesian`] integrates `ẍᵏ = −Γᵏᵢⱼ ẋⁱ ẋʲ` with the
//! Christoffel symbols of the model metric itself, using analytic
//! derivatives of the metric coefficients. This route has no chart
//! singularity away from `E₀` and the cone, and exercises the full metric
//! for both geometries.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geodesic::{tangent_of, GeodesicParams};
use crate::geometry::{metric_at, to_model, GeometryKind, IntrinsicCoords, ModelPoint};
use crate::numerics::IntegratorTolerances;

/// Position and velocity of a geodesic in a three-dimensional chart.
///
/// For the intrinsic charts the position is `(t, φ, θ)` resp. `(t, r, α)`;
/// for the Cartesian route it is `(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeState {
    pub position: [f64; 3],
    pub velocity: [f64; 3],
}

impl OdeState {
    fn to_array(self) -> [f64; 6] {
        let [a, b, c] = self.position;
        let [d, e, f] = self.velocity;
        [a, b, c, d, e, f]
    }

    fn from_array(s: [f64; 6]) -> Self {
        Self {
            position: [s[0], s[1], s[2]],
            velocity: [s[3], s[4], s[5]],
        }
    }
}

/// The integrated curve and its unit-speed bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicTrace {
    pub points: Vec<ModelPoint>,
    pub states: Vec<OdeState>,
    /// Largest `|speed² − 1|` seen at accepted steps.
    pub max_speed_drift: f64,
    pub accepted_steps: usize,
}

impl GeodesicTrace {
    pub fn endpoint(&self) -> &ModelPoint {
        self.points.last().expect("trace has at least two points")
    }
}

const SERIES_GUARD_R: f64 = 1e-6;
const POLE_GUARD: f64 = 1e-9;
const MAX_STEPS: usize = 1_000_000;

trait GeodesicSystem {
    fn accel(&self, s: &[f64; 6]) -> Result<[f64; 3]>;
    fn speed_sq(&self, s: &[f64; 6]) -> f64;
    fn to_point(&self, s: &[f64; 6]) -> ModelPoint;
}

struct SphereChart;

impl GeodesicSystem for SphereChart {
    fn accel(&self, s: &[f64; 6]) -> Result<[f64; 3]> {
        let theta = s[2];
        let (sn, cs) = theta.sin_cos();
        if cs.abs() < POLE_GUARD {
            return Err(GeomError::Singularity(format!(
                "geodesic passes the pole (theta = {theta})"
            )));
        }
        let (dphi, dtheta) = (s[4], s[5]);
        Ok([0.0, 2.0 * (sn / cs) * dtheta * dphi, -sn * cs * dphi * dphi])
    }

    fn speed_sq(&self, s: &[f64; 6]) -> f64 {
        let c = s[2].cos();
        s[3] * s[3] + c * c * s[4] * s[4] + s[5] * s[5]
    }

    fn to_point(&self, s: &[f64; 6]) -> ModelPoint {
        to_model(&IntrinsicCoords::Sphere {
            t: s[0],
            phi: s[1],
            theta: s[2],
        })
    }
}

struct HyperbolicChart;

impl GeodesicSystem for HyperbolicChart {
    fn accel(&self, s: &[f64; 6]) -> Result<[f64; 3]> {
        let (r, dr, dalpha) = (s[1], s[4], s[5]);
        let coth_term = if r.abs() < SERIES_GUARD_R {
            if dalpha == 0.0 {
                0.0
            } else if r == 0.0 {
                return Err(GeomError::Singularity("angular velocity at the polar origin".into()));
            } else {
                2.0 / r * dr * dalpha
            }
        } else {
            2.0 / r.tanh() * dr * dalpha
        };
        Ok([0.0, r.sinh() * r.cosh() * dalpha * dalpha, -coth_term])
    }

    fn speed_sq(&self, s: &[f64; 6]) -> f64 {
        let sh = s[1].sinh();
        s[3] * s[3] + s[4] * s[4] + sh * sh * s[5] * s[5]
    }

    fn to_point(&self, s: &[f64; 6]) -> ModelPoint {
        to_model(&IntrinsicCoords::Hyperbolic {
            t: s[0],
            r: s[1],
            alpha: s[2],
        })
    }
}

/// Partial derivatives `∂g/∂xᵏ` of the Cartesian metric coefficients.
pub fn metric_derivatives(kind: GeometryKind, p: &ModelPoint) -> Result<[Matrix3<f64>; 3]> {
    let g = *metric_at(kind, p)?.matrix();
    let (x, y, z) = (p.x(), p.y(), p.z());
    Ok(match kind {
        GeometryKind::SphereTimesR => {
            // g = I / Q, ∂ₖg = −2 xₖ I / Q²
            let q = x * x + y * y + z * z;
            [x, y, z].map(|c| Matrix3::identity() * (-2.0 * c / (q * q)))
        }
        GeometryKind::HyperbolicTimesR => {
            // g = N / D², ∂ₖg = ∂ₖN / D² − 2 N ∂ₖD / D³ = (∂ₖN − 2 g D ∂ₖD) / D²
            let d = -x * x + y * y + z * z;
            #[rustfmt::skip]
            let dn = [
                Matrix3::new(
                    2.0 * x,  -2.0 * y, -2.0 * z,
                    -2.0 * y, 2.0 * x,  0.0,
                    -2.0 * z, 0.0,      2.0 * x,
                ),
                Matrix3::new(
                    2.0 * y,  -2.0 * x, 0.0,
                    -2.0 * x, 2.0 * y,  2.0 * z,
                    0.0,      2.0 * z,  -2.0 * y,
                ),
                Matrix3::new(
                    2.0 * z,  0.0,      -2.0 * x,
                    0.0,      -2.0 * z, 2.0 * y,
                    -2.0 * x, 2.0 * y,  2.0 * z,
                ),
            ];
            let dd = [-2.0 * x, 2.0 * y, 2.0 * z];
            [0, 1, 2].map(|k| (dn[k] - g * (2.0 * d * dd[k])) / (d * d))
        }
    })
}

struct CartesianChart(GeometryKind);

impl GeodesicSystem for CartesianChart {
    fn accel(&self, s: &[f64; 6]) -> Result<[f64; 3]> {
        let p = ModelPoint::from_cartesian(Vector3::new(s[0], s[1], s[2]));
        let v = Vector3::new(s[3], s[4], s[5]);
        let g =
            metric_at(self.0, &p).map_err(|_| GeomError::Singularity(format!("integration left the model at {p}")))?;
        let dg = metric_derivatives(self.0, &p)?;
        // Γ_lij vⁱ vʲ = ½ (2 (∂ᵢg_lj) vⁱ vʲ − (∂_l g_ij) vⁱ vʲ)
        let directional = dg[0] * v.x + dg[1] * v.y + dg[2] * v.z;
        let first = directional * v;
        let second = Vector3::new(v.dot(&(dg[0] * v)), v.dot(&(dg[1] * v)), v.dot(&(dg[2] * v)));
        let lowered = first - second * 0.5;
        let inv = g
            .matrix()
            .try_inverse()
            .ok_or_else(|| GeomError::Singularity("singular metric".into()))?;
        let a = -(inv * lowered);
        Ok([a.x, a.y, a.z])
    }

    fn speed_sq(&self, s: &[f64; 6]) -> f64 {
        let p = ModelPoint::from_cartesian(Vector3::new(s[0], s[1], s[2]));
        metric_at(self.0, &p)
            .map(|g| g.quadratic_form(&Vector3::new(s[3], s[4], s[5])))
            .unwrap_or(f64::NAN)
    }

    fn to_point(&self, s: &[f64; 6]) -> ModelPoint {
        ModelPoint::from_cartesian(Vector3::new(s[0], s[1], s[2]))
    }
}

/// Initial state of the geodesic with direction `(u, v)` in the intrinsic chart.
pub fn initial_state(kind: GeometryKind, g: &GeodesicParams) -> OdeState {
    let (sv, cv) = g.v.sin_cos();
    let (su, cu) = g.u.sin_cos();
    match kind {
        GeometryKind::SphereTimesR => OdeState {
            position: [0.0; 3],
            velocity: [sv, cv * cu, cv * su],
        },
        GeometryKind::HyperbolicTimesR => OdeState {
            position: [0.0, 0.0, g.u],
            velocity: [sv, cv, 0.0],
        },
    }
}

/// Integrates the intrinsic-chart geodesic equations from the base point up
/// to arc length `g.tau`, recording `steps + 1` equally spaced samples.
pub fn integrate_geodesic(kind: GeometryKind, g: &GeodesicParams, steps: usize) -> Result<GeodesicTrace> {
    integrate_geodesic_with(kind, g, steps, IntegratorTolerances::STANDARD)
}

pub fn integrate_geodesic_with(
    kind: GeometryKind,
    g: &GeodesicParams,
    steps: usize,
    tol: IntegratorTolerances,
) -> Result<GeodesicTrace> {
    check_request(g, steps)?;
    let start = initial_state(kind, g);
    match kind {
        GeometryKind::SphereTimesR => run(&SphereChart, start, g.tau, steps, tol),
        GeometryKind::HyperbolicTimesR => run(&HyperbolicChart, start, g.tau, steps, tol),
    }
}

/// Integrates the geodesic equations of the Cartesian model metric.
pub fn integrate_geodesic_cartesian(kind: GeometryKind, g: &GeodesicParams, steps: usize) -> Result<GeodesicTrace> {
    check_request(g, steps)?;
    let t = tangent_of(g).0;
    let start = OdeState {
        position: [1.0, 0.0, 0.0],
        velocity: [t.x, t.y, t.z],
    };
    run(
        &CartesianChart(kind),
        start,
        g.tau,
        steps,
        IntegratorTolerances::STANDARD,
    )
}

fn check_request(g: &GeodesicParams, steps: usize) -> Result<()> {
    if steps < 100 {
        return Err(GeomError::Precondition(format!("need at least 100 steps, got {steps}")));
    }
    if !(0.0..=10.0).contains(&g.tau) {
        return Err(GeomError::Precondition(format!(
            "tau must lie in [0, 10], got {}",
            g.tau
        )));
    }
    Ok(())
}

fn run<S: GeodesicSystem>(
    sys: &S,
    start: OdeState,
    tau: f64,
    steps: usize,
    tol: IntegratorTolerances,
) -> Result<GeodesicTrace> {
    let mut state = start.to_array();
    let mut points = vec![sys.to_point(&state)];
    let mut states = vec![start];
    let mut max_speed_drift = (sys.speed_sq(&state) - 1.0).abs();
    let mut accepted_steps = 0;
    let mut h = (tau / steps as f64).min(0.01);
    for i in 1..=steps {
        let target = tau * i as f64 / steps as f64;
        let from = tau * (i - 1) as f64 / steps as f64;
        let (next, drift, n, h_next) = advance(sys, state, from, target, h, tol)?;
        state = next;
        h = h_next;
        max_speed_drift = max_speed_drift.max(drift);
        accepted_steps += n;
        points.push(sys.to_point(&state));
        states.push(OdeState::from_array(state));
    }
    Ok(GeodesicTrace {
        points,
        states,
        max_speed_drift,
        accepted_steps,
    })
}

// Dormand–Prince 5(4) coefficients.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn derivative<S: GeodesicSystem>(sys: &S, s: &[f64; 6]) -> Result<[f64; 6]> {
    let a = sys.accel(s)?;
    Ok([s[3], s[4], s[5], a[0], a[1], a[2]])
}

/// Integrates from `from` to `to` with adaptive steps. Returns the state,
/// the largest speed drift, the number of accepted steps, and the step size
/// to try next.
fn advance<S: GeodesicSystem>(
    sys: &S,
    mut y: [f64; 6],
    from: f64,
    to: f64,
    mut h: f64,
    tol: IntegratorTolerances,
) -> Result<([f64; 6], f64, usize, f64)> {
    let mut t = from;
    let mut drift: f64 = 0.0;
    let mut accepted = 0;
    let mut attempts = 0;
    while to - t > 1e-15 * to.abs().max(1.0) {
        attempts += 1;
        if attempts > MAX_STEPS {
            return Err(GeomError::Singularity("step size collapsed".into()));
        }
        let clipped = h >= to - t;
        let step = if clipped { to - t } else { h };
        let mut k = [[0.0; 6]; 7];
        k[0] = derivative(sys, &y)?;
        for stage in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(stage) {
                for (d, v) in ys.iter_mut().enumerate() {
                    *v += step * A[stage][j] * kj[d];
                }
            }
            k[stage] = derivative(sys, &ys)?;
        }
        let mut y5 = y;
        let mut err: f64 = 0.0;
        for d in 0..6 {
            let (mut hi, mut lo) = (0.0, 0.0);
            for s in 0..7 {
                hi += B5[s] * k[s][d];
                lo += B4[s] * k[s][d];
            }
            y5[d] += step * hi;
            let scale = tol.absolute + tol.relative * y[d].abs().max(y5[d].abs());
            err = err.max((step * (hi - lo)).abs() / scale);
        }
        let speed_drift = (sys.speed_sq(&y5) - 1.0).abs();
        let ok = err <= 1.0 && speed_drift <= tol.speed_drift;
        if ok {
            y = y5;
            t += step;
            accepted += 1;
            drift = drift.max(speed_drift);
        }
        let proposal = if speed_drift > tol.speed_drift {
            step * 0.5
        } else if err == 0.0 {
            step * 5.0
        } else {
            step * (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        // A step shortened only to land on the output time says nothing about h.
        if !(ok && clipped) {
            h = proposal;
        }
    }
    Ok((y, drift, accepted, h))
}

/// Length of a sampled curve under the ambient metric.
///
/// Each chord `Δ = pᵢ₊₁ − pᵢ` contributes `√(Δᵀ g(m) Δ)` with `g` evaluated at
/// the chord midpoint `m`; the composite rule converges at second order in
/// the sample spacing.
pub fn arc_length_quadrature(kind: GeometryKind, curve: &[ModelPoint]) -> Result<f64> {
    if curve.len() < 2 {
        return Err(GeomError::Precondition("a curve needs at least 2 points".into()));
    }
    for p in curve {
        if !p.is_member(kind) {
            return Err(GeomError::Domain(format!("{p} is not a point of {kind}")));
        }
    }
    curve.windows(2).try_fold(0.0, |acc, w| {
        let (a, b) = (w[0].cartesian(), w[1].cartesian());
        let mid = ModelPoint::from_cartesian((a + b) * 0.5);
        let delta = b - a;
        Ok(acc + metric_at(kind, &mid)?.quadratic_form(&delta).sqrt())
    })
}
