//! The one-parameter angle-sum family `S(t)`.
//!
//! `A₁` is the base point, `A₂` is fixed and the third vertex slides along
//! the ray `A₃(t) = (1, t·x₃, t·y₃, t·z₃)` out of the model center. `S(t)`
//! tends to `π` at both ends of the ray and has one interior extremum: a
//! maximum in S²×R, a minimum in H²×R.

use std::f64::consts::PI;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geometry::{GeometryKind, ModelPoint};
use crate::numerics::Tolerances;
use crate::triangle::{is_coplanar_with_center, GeodesicTriangle};

/// How the sample grid is laid out over `[t_min, t_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridSpacing {
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub kind: GeometryKind,
    pub a2: ModelPoint,
    pub ray: [f64; 3],
    pub t_min: f64,
    pub t_max: f64,
    pub samples: usize,
    pub spacing: GridSpacing,
}

impl SweepSpec {
    pub const DEFAULT_SAMPLES: usize = 512;
    pub const DEFAULT_T_MIN: f64 = 1e-3;
    pub const DEFAULT_T_MAX: f64 = 5.0;

    /// Default grid: 512 log-spaced samples on `[10⁻³, 5]`.
    pub fn new(kind: GeometryKind, a2: ModelPoint, ray: [f64; 3]) -> Self {
        Self {
            kind,
            a2,
            ray,
            t_min: Self::DEFAULT_T_MIN,
            t_max: Self::DEFAULT_T_MAX,
            samples: Self::DEFAULT_SAMPLES,
            spacing: GridSpacing::Log,
        }
    }

    pub fn with_range(mut self, t_min: f64, t_max: f64) -> Self {
        self.t_min = t_min;
        self.t_max = t_max;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_spacing(mut self, spacing: GridSpacing) -> Self {
        self.spacing = spacing;
        self
    }

    /// `A₃(t)`.
    pub fn third_vertex(&self, t: f64) -> Result<ModelPoint> {
        let [x, y, z] = self.ray;
        ModelPoint::new(self.kind, t * x, t * y, t * z)
            .map_err(|_| GeomError::Domain(format!("A3({t}) leaves the {} model", self.kind)))
    }

    /// The angle sum of the triangle `A₁ A₂ A₃(t)`.
    pub fn angle_sum_at(&self, t: f64) -> Result<f64> {
        let tri = GeodesicTriangle::new(self.kind, ModelPoint::base(), self.a2, self.third_vertex(t)?)?;
        Ok(tri.angle_sum()?.sum)
    }

    /// Whether every triangle of the family is coplanar with `E₀` (then `S ≡ π`).
    pub fn is_flat(&self) -> bool {
        let ray = ModelPoint::from_cartesian(Vector3::from(self.ray));
        is_coplanar_with_center(&[ModelPoint::base(), self.a2, ray], Tolerances::STANDARD.coplanar)
    }

    fn validate(&self) -> Result<()> {
        if !(self.t_min > 0.0 && self.t_max > self.t_min && self.t_max.is_finite()) {
            return Err(GeomError::Domain(format!(
                "sweep range must satisfy 0 < t_min < t_max, got ({}, {})",
                self.t_min, self.t_max
            )));
        }
        if self.samples < 3 {
            return Err(GeomError::Precondition(format!(
                "need at least 3 samples, got {}",
                self.samples
            )));
        }
        if !self.a2.is_member(self.kind) {
            return Err(GeomError::Domain(format!(
                "{} is not a point of {}",
                self.a2, self.kind
            )));
        }
        Ok(())
    }

    /// The sample abscissae, strictly increasing, endpoints included.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.samples;
        let last = (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    return self.t_max;
                }
                let f = i as f64 / last;
                match self.spacing {
                    GridSpacing::Log => self.t_min * (self.t_max / self.t_min).powf(f),
                    GridSpacing::Linear => self.t_min + (self.t_max - self.t_min) * f,
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtremumKind {
    Maximum,
    Minimum,
    /// The family is coplanar with `E₀`; `S ≡ π` and no extremum exists.
    DegenerateFlat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub series: Vec<(f64, f64)>,
    pub t_extremum: f64,
    pub s_extremum: f64,
    pub extremum_kind: ExtremumKind,
}

/// Samples `S(t)` on the grid and refines the extremum by golden-section
/// search inside the grid cells adjacent to the best sample.
pub fn evaluate(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let series = spec
        .grid()
        .into_iter()
        .map(|t| spec.angle_sum_at(t).map(|s| (t, s)))
        .collect::<Result<Vec<_>>>()?;

    let extremum_kind = if spec.is_flat() {
        ExtremumKind::DegenerateFlat
    } else {
        match spec.kind {
            GeometryKind::SphereTimesR => ExtremumKind::Maximum,
            GeometryKind::HyperbolicTimesR => ExtremumKind::Minimum,
        }
    };
    // Golden-section minimizes; flip the sign to find a maximum.
    let sign = if extremum_kind == ExtremumKind::Maximum {
        -1.0
    } else {
        1.0
    };

    let best = (0..series.len())
        .min_by(|&i, &j| (sign * series[i].1).total_cmp(&(sign * series[j].1)))
        .expect("grid has at least three samples");
    let (t_extremum, s_extremum) = if extremum_kind == ExtremumKind::DegenerateFlat {
        series[best]
    } else {
        let lo = series[best.saturating_sub(1)].0;
        let hi = series[(best + 1).min(series.len() - 1)].0;
        let mut failure = None;
        let t = golden_section(
            |t| match spec.angle_sum_at(t) {
                Ok(s) => sign * s,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::INFINITY
                }
            },
            lo,
            hi,
            Tolerances::STANDARD.extremum_width,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        (t, spec.angle_sum_at(t)?)
    };
    Ok(SweepResult {
        series,
        t_extremum,
        s_extremum,
        extremum_kind,
    })
}

/// `S` near both ends of the ray.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitsReport {
    /// `S(t_min)`.
    pub s_near_zero: f64,
    /// `S(t_far)`.
    pub s_near_infinity: f64,
    /// Log-spaced samples of `S` on `[t_far / 10, t_far]`.
    pub tail: Vec<(f64, f64)>,
    /// Whether `|S − π|` is non-increasing along the tail.
    pub tail_monotone: bool,
}

impl LimitsReport {
    pub const DEFAULT_FAR: f64 = 1e3;
    pub const TAIL_SAMPLES: usize = 32;
}

/// Evaluates `S` at `t_min` and on a tail ending at `t = 10³`.
pub fn limits_check(spec: &SweepSpec) -> Result<LimitsReport> {
    limits_check_at(spec, LimitsReport::DEFAULT_FAR)
}

/// [`limits_check`] with an explicit far end of the ray.
pub fn limits_check_at(spec: &SweepSpec, t_far: f64) -> Result<LimitsReport> {
    spec.validate()?;
    let s_near_zero = spec.angle_sum_at(spec.t_min)?;
    let tail_spec = spec
        .with_range(t_far / 10.0, t_far)
        .with_samples(LimitsReport::TAIL_SAMPLES)
        .with_spacing(GridSpacing::Log);
    let tail = tail_spec
        .grid()
        .into_iter()
        .map(|t| spec.angle_sum_at(t).map(|s| (t, s)))
        .collect::<Result<Vec<_>>>()?;
    let tail_monotone = tail.windows(2).all(|w| (w[1].1 - PI).abs() <= (w[0].1 - PI).abs());
    let s_near_infinity = tail.last().map(|&(_, s)| s).unwrap_or(s_near_zero);
    Ok(LimitsReport {
        s_near_zero,
        s_near_infinity,
        tail,
        tail_monotone,
    })
}

/// Golden-section minimization of a unimodal `f` on `[lo, hi]`, stopping when
/// the bracket is narrower than `width`. Returns the bracket midpoint.
pub fn golden_section<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, width: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > width {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}
