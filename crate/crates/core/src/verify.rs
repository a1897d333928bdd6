//! Seeded property suites.
//!
//! Each suite draws `trials` random inputs from a ChaCha8 stream seeded with
//! the configured seed (offset per suite, so suites are independent of each
//! other's trial counts) and checks one invariant. The first violation is
//! kept as a reproducing input.

use std::f64::consts::PI;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::geodesic::{distance, geodesic_params, geodesic_point, GeodesicParams};
use crate::geometry::{GeometryKind, ModelPoint};
use crate::isometry::{apply, to_origin};
use crate::oracle::integrate_geodesic;
use crate::sampling::{random_coplanar_triple, random_params, random_point};
use crate::triangle::GeodesicTriangle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Roundtrip,
    IsometryInvariance,
    OdeEquivalence,
    Trichotomy,
    Antipodality,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Roundtrip,
        Suite::IsometryInvariance,
        Suite::OdeEquivalence,
        Suite::Trichotomy,
        Suite::Antipodality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Roundtrip => "roundtrip",
            Suite::IsometryInvariance => "isometry-invariance",
            Suite::OdeEquivalence => "ode-equivalence",
            Suite::Trichotomy => "trichotomy",
            Suite::Antipodality => "antipodality",
        }
    }

    /// The invariant the suite checks, as printed in failure reports.
    pub fn invariant(self, kind: GeometryKind) -> String {
        match self {
            Suite::Roundtrip => "geodesic_point(geodesic_params(p)) = p within 1e-10 relative per coordinate".into(),
            Suite::IsometryInvariance => "distance(p, q) = distance(T p, T q) within 1e-8".into(),
            Suite::OdeEquivalence => "ODE endpoint = closed-form endpoint within 1e-6, unit-speed drift <= 1e-8".into(),
            Suite::Trichotomy => match kind {
                GeometryKind::SphereTimesR => "angle sum >= pi - 1e-9; coplanar-with-E0 sum = pi within 1e-8".into(),
                GeometryKind::HyperbolicTimesR => {
                    "angle sum <= pi + 1e-9; coplanar-with-E0 sum = pi within 1e-8".into()
                }
            },
            Suite::Antipodality => "paired side tangents are opposite within 1e-8".into(),
        }
    }

    fn seed_offset(self) -> u64 {
        self as u64 * 0x9E37_79B9
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub kind: GeometryKind,
    pub trials: usize,
    pub seed: u64,
    /// Adds the offset to the checked quantity of one suite. Used to
    /// exercise failure reporting.
    pub fault: Option<(Suite, f64)>,
}

impl VerifyConfig {
    pub fn new(kind: GeometryKind, trials: usize, seed: u64) -> Self {
        Self {
            kind,
            trials,
            seed,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub invariant: String,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    /// Largest measured violation ratio (measured error / tolerance).
    pub worst_ratio: f64,
    /// The first failing input, if any.
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Outcome of one trial: a measured error, its tolerance, and a description
/// of the input.
struct Trial {
    error: f64,
    tolerance: f64,
    input: String,
}

pub fn run_suite(cfg: &VerifyConfig, suite: Suite) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ suite.seed_offset());
    let kind = cfg.kind;
    let bias = match cfg.fault {
        Some((s, b)) if s == suite => b,
        _ => 0.0,
    };
    let mut report = SuiteReport {
        suite,
        invariant: suite.invariant(kind),
        trials: cfg.trials,
        passed: 0,
        failed: 0,
        worst_ratio: 0.0,
        counterexample: None,
    };
    for i in 0..cfg.trials {
        let trials = match suite {
            Suite::Roundtrip => roundtrip_trial(kind, &mut rng)?,
            Suite::IsometryInvariance => isometry_trial(kind, &mut rng)?,
            Suite::OdeEquivalence => ode_trial(kind, &mut rng)?,
            Suite::Trichotomy => trichotomy_trial(kind, &mut rng, i % 2 == 1)?,
            Suite::Antipodality => antipodality_trial(kind, &mut rng)?,
        };
        let mut trial_ok = true;
        for t in trials {
            let ratio = (t.error + bias) / t.tolerance;
            report.worst_ratio = report.worst_ratio.max(ratio);
            if ratio > 1.0 || ratio.is_nan() {
                trial_ok = false;
                report.counterexample.get_or_insert_with(|| {
                    format!(
                        "trial {i}: {} (error {:e} > {:e})",
                        t.input,
                        t.error + bias,
                        t.tolerance
                    )
                });
            }
        }
        if trial_ok {
            report.passed += 1;
        } else {
            report.failed += 1;
        }
    }
    Ok(report)
}

/// Runs every suite in order.
pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    Suite::ALL.iter().map(|&s| run_suite(cfg, s)).collect()
}

fn params_label(g: &GeodesicParams) -> String {
    format!("u={:.17e}, v={:.17e}, tau={:.17e}", g.u, g.v, g.tau)
}

fn roundtrip_trial(kind: GeometryKind, rng: &mut ChaCha8Rng) -> Result<Vec<Trial>> {
    let tau_max = match kind {
        GeometryKind::SphereTimesR => 4.0,
        GeometryKind::HyperbolicTimesR => 10.0,
    };
    let g = random_params(kind, rng, tau_max);
    let p = geodesic_point(kind, &g)?;
    let back = geodesic_point(kind, &geodesic_params(kind, &p)?)?;
    let scale = p.cartesian().amax().max(1.0);
    Ok(vec![Trial {
        error: p.max_abs_diff(&back) / scale,
        tolerance: 1e-10,
        input: params_label(&g),
    }])
}

fn isometry_trial(kind: GeometryKind, rng: &mut ChaCha8Rng) -> Result<Vec<Trial>> {
    let (p, q, a) = (
        random_point(kind, rng),
        random_point(kind, rng),
        random_point(kind, rng),
    );
    let m = to_origin(kind, &a)?;
    let before = distance(kind, &p, &q)?;
    let after = distance(kind, &apply(&m, &p)?, &apply(&m, &q)?)?;
    Ok(vec![Trial {
        error: (before - after).abs(),
        tolerance: 1e-8,
        input: format!("p={p}, q={q}, a={a}"),
    }])
}

fn ode_trial(kind: GeometryKind, rng: &mut ChaCha8Rng) -> Result<Vec<Trial>> {
    let g = random_params(kind, rng, 2.0);
    let trace = integrate_geodesic(kind, &g, 100)?;
    let want = geodesic_point(kind, &g)?;
    let input = params_label(&g);
    Ok(vec![
        Trial {
            error: trace.endpoint().max_abs_diff(&want),
            tolerance: 1e-6,
            input: input.clone(),
        },
        Trial {
            error: trace.max_speed_drift,
            tolerance: 1e-8,
            input,
        },
    ])
}

fn triangle_label(v: &[ModelPoint; 3]) -> String {
    format!("A1={}, A2={}, A3={}", v[0], v[1], v[2])
}

fn trichotomy_trial(kind: GeometryKind, rng: &mut ChaCha8Rng, coplanar: bool) -> Result<Vec<Trial>> {
    let v = if coplanar {
        random_coplanar_triple(kind, rng)
    } else {
        [
            random_point(kind, rng),
            random_point(kind, rng),
            random_point(kind, rng),
        ]
    };
    let sum = GeodesicTriangle::new(kind, v[0], v[1], v[2])?.angle_sum()?.sum;
    let input = triangle_label(&v);
    Ok(vec![if coplanar {
        Trial {
            error: (sum - PI).abs(),
            tolerance: 1e-8,
            input,
        }
    } else {
        let excess = match kind {
            GeometryKind::SphereTimesR => PI - sum,
            GeometryKind::HyperbolicTimesR => sum - PI,
        };
        Trial {
            error: excess.max(0.0),
            tolerance: 1e-9,
            input,
        }
    }])
}

fn antipodality_trial(kind: GeometryKind, rng: &mut ChaCha8Rng) -> Result<Vec<Trial>> {
    let v = [
        random_point(kind, rng),
        random_point(kind, rng),
        random_point(kind, rng),
    ];
    let defect = GeodesicTriangle::new(kind, v[0], v[1], v[2])?.antipodality_defect()?;
    Ok(vec![Trial {
        error: defect,
        tolerance: 1e-8,
        input: triangle_label(&v),
    }])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass_and_are_deterministic() {
        for kind in GeometryKind::ALL {
            let cfg = VerifyConfig::new(kind, 20, 42);
            let a = run_all(&cfg).unwrap();
            assert!(a.iter().all(SuiteReport::ok), "{a:#?}");
            assert_eq!(a, run_all(&cfg).unwrap());
        }
    }

    #[test]
    fn injected_fault_names_the_invariant() {
        let mut cfg = VerifyConfig::new(GeometryKind::HyperbolicTimesR, 3, 1);
        cfg.fault = Some((Suite::Antipodality, 1e-3));
        let reports = run_all(&cfg).unwrap();
        let bad: Vec<_> = reports.iter().filter(|r| !r.ok()).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].suite, Suite::Antipodality);
        assert!(bad[0].counterexample.as_ref().unwrap().contains("trial 0"));
    }
}
