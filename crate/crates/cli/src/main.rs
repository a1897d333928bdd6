use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thurston_core::tables::{published_tables, reproduce, TableRowReport, TABLE_TOLERANCE};
use thurston_core::{
    evaluate, geodesic_point, resolve_endpoint, run_all, sample_curve, GeodesicParams, GeodesicTriangle, GeomError,
    GeometryKind, GridSpacing, ModelPoint, Suite, SweepSpec, VerifyConfig,
};

mod render;

use render::{Num, Table};

/// Geodesics and geodesic-triangle angle sums in S2xR and H2xR.
#[derive(Parser)]
#[command(name = "thurston", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Decimal places for table and CSV output.
    #[arg(long, env = "THURSTON_PRECISION", default_value_t = 6)]
    precision: usize,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Interior angles, angle sum and classification of one triangle.
    Triangle {
        #[arg(long, value_parser = parse_kind)]
        geometry: GeometryKind,
        /// First vertex; defaults to the base point (1,1,0,0).
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coords)]
        a1: Option<Homogeneous>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coords)]
        a2: Homogeneous,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coords)]
        a3: Homogeneous,
        #[command(flatten)]
        out: Output,
    },
    /// Recomputes the two published angle tables.
    Tables {
        #[command(flatten)]
        out: Output,
        /// Shifts every published reference value (exercises the failure path).
        #[arg(long, hide = true, default_value_t = 0.0, allow_hyphen_values = true)]
        reference_offset: f64,
    },
    /// Angle sum along a ray of third vertices, with its extremum.
    Sweep {
        #[arg(long, value_parser = parse_kind)]
        geometry: GeometryKind,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coords)]
        a2: Homogeneous,
        /// Direction of the ray from the model center, as x,y,z.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_triple)]
        ray: [f64; 3],
        #[arg(long, default_value_t = SweepSpec::DEFAULT_T_MIN)]
        t_min: f64,
        #[arg(long, default_value_t = SweepSpec::DEFAULT_T_MAX)]
        t_max: f64,
        #[arg(long, default_value_t = SweepSpec::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Spacing::Log)]
        spacing: Spacing,
        #[command(flatten)]
        out: Output,
    },
    /// Samples a geodesic from the base point.
    Geodesic {
        #[arg(long, value_parser = parse_kind)]
        geometry: GeometryKind,
        /// Target point; the shortest geodesic to it is sampled.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coords, conflicts_with = "params", required_unless_present = "params")]
        to: Option<Homogeneous>,
        /// Geodesic parameters u,v,tau.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_triple)]
        params: Option<[f64; 3]>,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Seeded property suites.
    Verify {
        #[arg(long, value_parser = parse_kind)]
        geometry: GeometryKind,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
        trials: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// suite:offset, adds offset to the measured error of one suite.
        #[arg(long, hide = true, value_parser = parse_fault)]
        inject_fault: Option<(Suite, f64)>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum Spacing {
    Log,
    Linear,
}

fn parse_kind(s: &str) -> Result<GeometryKind, String> {
    s.parse().map_err(|_| format!("expected s2r or h2r, got '{s}'"))
}

fn parse_numbers(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| format!("'{p}' is not a number")))
        .collect()
}

/// Homogeneous coordinates of a point as typed on the command line.
#[derive(Clone, Copy)]
struct Homogeneous([f64; 4]);

/// `x,y,z` (with x⁰ = 1) or `x0,x,y,z`.
fn parse_coords(s: &str) -> Result<Homogeneous, String> {
    let v = parse_numbers(s)?;
    match v.len() {
        3 => Ok(Homogeneous([1.0, v[0], v[1], v[2]])),
        4 => Ok(Homogeneous([v[0], v[1], v[2], v[3]])),
        n => Err(format!("expected 3 or 4 coordinates, got {n}")),
    }
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let v = parse_numbers(s)?;
    <[f64; 3]>::try_from(v).map_err(|v| format!("expected 3 values, got {}", v.len()))
}

fn parse_fault(s: &str) -> Result<(Suite, f64), String> {
    let (name, offset) = s.split_once(':').ok_or("expected suite:offset")?;
    let suite = Suite::ALL
        .into_iter()
        .find(|x| x.name() == name)
        .ok_or_else(|| format!("unknown suite '{name}'"))?;
    Ok((
        suite,
        offset.parse().map_err(|_| format!("'{offset}' is not a number"))?,
    ))
}

fn point(kind: GeometryKind, h: Homogeneous) -> Result<ModelPoint, GeomError> {
    ModelPoint::from_homogeneous(kind, h.0)
}

fn spatial(p: &ModelPoint) -> [f64; 3] {
    [p.x(), p.y(), p.z()]
}

/// What a command produced: text for stdout and whether its checks held.
struct Report {
    text: String,
    ok: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, ok: true }
    }
}

fn json_text(mut v: Value) -> String {
    v.as_object_mut()
        .expect("reports are objects")
        .insert("schema".into(), json!("v1"));
    serde_json::to_string_pretty(&v).expect("values serialize") + "\n"
}

fn triangle(kind: GeometryKind, a: [Homogeneous; 3], out: Output) -> Result<Report, GeomError> {
    let t = GeodesicTriangle::new(kind, point(kind, a[0])?, point(kind, a[1])?, point(kind, a[2])?)?;
    let angles = t.angle_sum()?;
    let class = t.classify()?;
    let coplanar = t.coplanar_with_center();
    let n = Num(out.precision);
    Ok(Report::ok(match out.format {
        Format::Json => json_text(json!({
            "kind": kind,
            "vertices": t.input_vertices().iter().map(spatial).collect::<Vec<_>>(),
            "w1": angles.w1,
            "w2": angles.w2,
            "w3": angles.w3,
            "sum": angles.sum,
            "class": class.label(),
            "coplanar": coplanar,
        })),
        Format::Csv => format!(
            "w1,w2,w3,sum,class,coplanar\n{},{},{},{},{class},{coplanar}\n",
            n.f(angles.w1),
            n.f(angles.w2),
            n.f(angles.w3),
            n.f(angles.sum)
        ),
        Format::Table => {
            let mut tab = Table::new(["quantity", "value"]);
            tab.row(["w1".into(), n.f(angles.w1)]);
            tab.row(["w2".into(), n.f(angles.w2)]);
            tab.row(["w3".into(), n.f(angles.w3)]);
            tab.row(["sum".into(), n.f(angles.sum)]);
            tab.row(["class".into(), class.to_string()]);
            tab.row(["coplanar".into(), coplanar.to_string()]);
            format!("{kind} triangle\n{tab}")
        }
    }))
}

fn tables(out: Output, offset: f64) -> Result<Report, GeomError> {
    let mut rows: Vec<TableRowReport> = Vec::new();
    for mut t in published_tables() {
        for r in &mut t.rows {
            r.sum += offset;
            r.angles.iter_mut().for_each(|w| *w += offset);
        }
        rows.extend(reproduce(&t)?);
    }
    let ok = rows.iter().all(TableRowReport::passes);
    let worst = rows.iter().map(|r| r.max_abs_deviation).fold(0.0, f64::max);
    let n = Num(out.precision);
    let text = match out.format {
        Format::Json => json_text(json!({
            "tolerance": TABLE_TOLERANCE,
            "max_abs_deviation": worst,
            "pass": ok,
            "rows": rows.iter().map(|r| json!({
                "table": r.table,
                "row": r.row,
                "kind": r.kind,
                "a3": r.a3,
                "w1": r.computed.w1,
                "w2": r.computed.w2,
                "w3": r.computed.w3,
                "sum": r.computed.sum,
                "ref": { "w1": r.published.angles[0], "w2": r.published.angles[1], "w3": r.published.angles[2], "sum": r.published.sum },
                "delta": r.max_abs_deviation,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("table,row,w1,w2,w3,sum,ref_sum,delta\n");
            for r in &rows {
                s += &format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.table,
                    r.row,
                    n.f(r.computed.w1),
                    n.f(r.computed.w2),
                    n.f(r.computed.w3),
                    n.f(r.computed.sum),
                    n.f(r.published.sum),
                    n.e(r.max_abs_deviation)
                );
            }
            s
        }
        Format::Table => {
            let mut tab = Table::new(["table", "row", "A3", "w1", "w2", "w3", "sum", "ref sum", "delta"]);
            for r in &rows {
                tab.row([
                    r.table.to_string(),
                    r.row.to_string(),
                    format!("({})", r.a3.iter().map(|c| n.g(*c)).collect::<Vec<_>>().join(", ")),
                    n.f(r.computed.w1),
                    n.f(r.computed.w2),
                    n.f(r.computed.w3),
                    n.f(r.computed.sum),
                    n.f(r.published.sum),
                    n.e(r.max_abs_deviation),
                ]);
            }
            let verdict = if ok { "all rows within" } else { "deviation exceeds" };
            format!("{tab}max |delta| = {} ({verdict} {TABLE_TOLERANCE:e})\n", n.e(worst))
        }
    };
    Ok(Report { text, ok })
}

fn sweep(spec: SweepSpec, out: Output) -> Result<Report, GeomError> {
    let r = evaluate(&spec)?;
    let n = Num(out.precision);
    let kind_label = serde_json::to_value(r.extremum_kind).expect("enum serializes");
    let kind_label = kind_label.as_str().expect("unit variant");
    Ok(Report::ok(match out.format {
        Format::Json => json_text(json!({
            "kind": spec.kind,
            "a2": spatial(&spec.a2),
            "ray": spec.ray,
            "series": r.series.iter().map(|&(t, s)| [t, s]).collect::<Vec<_>>(),
            "t0": r.t_extremum,
            "s0": r.s_extremum,
            "extremum_kind": kind_label,
        })),
        Format::Csv => {
            let mut s = String::from("t,S_t\n");
            for &(t, v) in &r.series {
                s += &format!("{},{}\n", n.g(t), n.f(v));
            }
            s
        }
        Format::Table => {
            let mut tab = Table::new(["t", "S(t)"]);
            for &(t, v) in &r.series {
                tab.row([n.g(t), n.f(v)]);
            }
            format!(
                "{} sweep, A2 = {}, ray = ({}, {}, {})\n{kind_label}: t0 = {}, S(t0) = {}\n{tab}",
                spec.kind,
                spec.a2,
                spec.ray[0],
                spec.ray[1],
                spec.ray[2],
                n.f(r.t_extremum),
                n.f(r.s_extremum)
            )
        }
    }))
}

fn geodesic(
    kind: GeometryKind,
    to: Option<Homogeneous>,
    params: Option<[f64; 3]>,
    samples: usize,
    out: Output,
) -> Result<Report, GeomError> {
    let (g, case) = match (to, params) {
        (Some(h), _) => {
            let (g, case) = resolve_endpoint(kind, &point(kind, h)?)?;
            (g, Some(case))
        }
        (None, Some([u, v, tau])) => (GeodesicParams::canonical(u, v, tau)?, None),
        (None, None) => unreachable!("clap requires one of --to and --params"),
    };
    let curve = sample_curve(kind, &g, samples)?;
    let end = geodesic_point(kind, &g)?;
    let n = Num(out.precision);
    let case_label = case.map(|c| serde_json::to_value(c).expect("enum serializes"));
    Ok(Report::ok(match out.format {
        Format::Json => json_text(json!({
            "kind": kind,
            "u": g.u,
            "v": g.v,
            "tau": g.tau,
            "case": case_label,
            "endpoint": spatial(&end),
            "points": curve.iter().map(spatial).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("s,x,y,z\n");
            let last = (samples - 1) as f64;
            for (i, p) in curve.iter().enumerate() {
                s += &format!(
                    "{},{},{},{}\n",
                    n.f(g.tau * i as f64 / last),
                    n.f(p.x()),
                    n.f(p.y()),
                    n.f(p.z())
                );
            }
            s
        }
        Format::Table => {
            let mut head = format!(
                "{kind} geodesic: u = {}, v = {}, tau = {}",
                n.f(g.u),
                n.f(g.v),
                n.f(g.tau)
            );
            if let Some(Value::String(c)) = &case_label {
                head += &format!(" ({c})");
            }
            let mut tab = Table::new(["s", "x", "y", "z"]);
            let last = (samples - 1) as f64;
            for (i, p) in curve.iter().enumerate() {
                tab.row([n.f(g.tau * i as f64 / last), n.f(p.x()), n.f(p.y()), n.f(p.z())]);
            }
            format!("{head}\n{tab}")
        }
    }))
}

fn verify(cfg: VerifyConfig, out: Output) -> Result<Report, GeomError> {
    let reports = run_all(&cfg)?;
    let ok = reports.iter().all(|r| r.ok());
    let n = Num(out.precision);
    let text = match out.format {
        Format::Json => json_text(json!({
            "kind": cfg.kind,
            "trials": cfg.trials,
            "seed": cfg.seed,
            "pass": ok,
            "suites": reports,
        })),
        Format::Csv => {
            let mut s = String::from("suite,trials,passed,failed,worst_ratio\n");
            for r in &reports {
                s += &format!(
                    "{},{},{},{},{}\n",
                    r.suite,
                    r.trials,
                    r.passed,
                    r.failed,
                    n.e(r.worst_ratio)
                );
            }
            s
        }
        Format::Table => {
            let mut tab = Table::new(["suite", "passed", "failed", "worst error/tol"]);
            for r in &reports {
                tab.row([
                    r.suite.to_string(),
                    r.passed.to_string(),
                    r.failed.to_string(),
                    n.e(r.worst_ratio),
                ]);
            }
            format!("{} verify, {} trials, seed {}\n{tab}", cfg.kind, cfg.trials, cfg.seed)
        }
    };
    for r in reports.iter().filter(|r| !r.ok()) {
        eprintln!(
            "FAIL {} [{}]: {}",
            r.suite,
            r.invariant,
            r.counterexample.as_deref().unwrap_or("no input recorded")
        );
    }
    Ok(Report { text, ok })
}

fn exit_code(e: &GeomError) -> u8 {
    match e {
        GeomError::Domain(_) | GeomError::Precondition(_) | GeomError::Unreachable(_) => 2,
        GeomError::Degenerate(_) => 3,
        GeomError::Consistency(_) | GeomError::Singularity(_) => 1,
    }
}

fn run(cli: Cli) -> Result<Report, GeomError> {
    match cli.command {
        Command::Triangle {
            geometry,
            a1,
            a2,
            a3,
            out,
        } => {
            let a1 = a1.unwrap_or(Homogeneous([1.0, 1.0, 0.0, 0.0]));
            triangle(geometry, [a1, a2, a3], out)
        }
        Command::Tables { out, reference_offset } => tables(out, reference_offset),
        Command::Sweep {
            geometry,
            a2,
            ray,
            t_min,
            t_max,
            samples,
            spacing,
            out,
        } => {
            let a2 = point(geometry, a2)?;
            let spacing = match spacing {
                Spacing::Log => GridSpacing::Log,
                Spacing::Linear => GridSpacing::Linear,
            };
            let spec = SweepSpec::new(geometry, a2, ray)
                .with_range(t_min, t_max)
                .with_samples(samples)
                .with_spacing(spacing);
            sweep(spec, out)
        }
        Command::Geodesic {
            geometry,
            to,
            params,
            samples,
            out,
        } => geodesic(geometry, to, params, samples, out),
        Command::Verify {
            geometry,
            trials,
            seed,
            inject_fault,
            out,
        } => {
            let mut cfg = VerifyConfig::new(geometry, trials as usize, seed);
            cfg.fault = inject_fault;
            verify(cfg, out)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            print!("{}", report.text);
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}: {e}", e.name());
            ExitCode::from(exit_code(&e))
        }
    }
}
