use std::process::{Command, Output};

use serde_json::Value;

fn thurston(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thurston"))
        .args(args)
        .env_remove("THURSTON_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = thurston(&all);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "v1");
    v
}

fn close(v: &Value, want: f64, tol: f64) -> bool {
    (v.as_f64().unwrap() - want).abs() <= tol
}

#[test]
fn triangle_reproduces_table_rows() {
    let v = json(&["triangle", "--geometry", "s2r", "--a2", "3,-2,1", "--a3", "2,1,0"]);
    for (k, want) in [("w1", 0.94654), ("w2", 0.68775), ("w3", 1.51707), ("sum", 3.15135)] {
        assert!(close(&v[k], want, 1e-4), "{k}: {}", v[k]);
    }
    assert_eq!(v["class"], "above");

    let v = json(&["triangle", "--geometry", "h2r", "--a2", "2,1.5,1", "--a3", "3,-1,0"]);
    for (k, want) in [("w1", 1.93230), ("w2", 0.49280), ("w3", 0.69816)] {
        assert!(close(&v[k], want, 1e-4), "{k}: {}", v[k]);
    }
    assert_eq!(v["class"], "below");
}

#[test]
fn coplanar_triangle_prints_pi() {
    let o = thurston(&[
        "triangle",
        "--geometry",
        "s2r",
        "--a2",
        "1,-3,0",
        "--a3",
        "2,1,0",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[3], "3.141593");
    assert_eq!(row[4], "equal");
    assert_eq!(row[5], "true");
}

#[test]
fn homogeneous_input_is_normalized() {
    let a = json(&["triangle", "--geometry", "s2r", "--a2", "2,6,-4,2", "--a3", "2,1,0"]);
    let b = json(&["triangle", "--geometry", "s2r", "--a2", "3,-2,1", "--a3", "2,1,0"]);
    assert!(close(&a["sum"], b["sum"].as_f64().unwrap(), 1e-12));
}

#[test]
fn triangle_errors_map_to_exit_codes() {
    let o = thurston(&["triangle", "--geometry", "h2r", "--a2", "1,2,0", "--a3", "3,-1,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("DomainError"));

    let o = thurston(&["triangle", "--geometry", "s2r", "--a2", "0,0,0", "--a3", "3,-1,0"]);
    assert_eq!(o.status.code(), Some(2));

    let o = thurston(&["triangle", "--geometry", "s2r", "--a2", "2,1,0", "--a3", "2,1,0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("DegenerateError"));
}

#[test]
fn tables_pass_and_guard_against_drift() {
    let o = thurston(&["tables"]);
    assert!(o.status.success());

    let v = json(&["tables"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 10);
    assert!(v["max_abs_deviation"].as_f64().unwrap() <= 1e-4);

    let o = thurston(&["tables", "--format", "csv"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("table,row,w1,w2,w3,sum,ref_sum,delta"));
    assert_eq!(text.lines().count(), 11);

    let o = thurston(&["tables", "--reference-offset", "1e-3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sweeps_find_the_published_extrema() {
    let v = json(&["sweep", "--geometry", "s2r", "--a2", "3,-2,1", "--ray", "2,1,0"]);
    assert!(close(&v["t0"], 0.19316, 1e-3));
    assert!(close(&v["s0"], 3.17450, 1e-3));
    assert_eq!(v["extremum_kind"], "maximum");
    assert_eq!(v["series"].as_array().unwrap().len(), 512);
    assert_eq!(v["kind"], "s2r");

    let v = json(&["sweep", "--geometry", "h2r", "--a2", "2,1.5,1", "--ray", "3,-1,0"]);
    assert!(close(&v["t0"], 0.36392, 1e-3));
    assert!(close(&v["s0"], 3.03236, 1e-3));
    assert_eq!(v["extremum_kind"], "minimum");
}

#[test]
fn coplanar_sweep_is_flat() {
    let v = json(&[
        "sweep",
        "--geometry",
        "h2r",
        "--a2",
        "2,1.5,0",
        "--ray",
        "3,-1,0",
        "--samples",
        "16",
    ]);
    assert_eq!(v["extremum_kind"], "degenerate-flat");
    for p in v["series"].as_array().unwrap() {
        assert!(close(&p[1], std::f64::consts::PI, 1e-8));
    }
}

#[test]
fn sweep_csv_and_domain_failure() {
    let o = thurston(&[
        "sweep",
        "--geometry",
        "s2r",
        "--a2",
        "3,-2,1",
        "--ray",
        "2,1,0",
        "--samples",
        "8",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("t,S_t"));
    assert_eq!(text.lines().count(), 9);

    // Every point of this ray lies outside the H2xR cone.
    let o = thurston(&["sweep", "--geometry", "h2r", "--a2", "2,1.5,1", "--ray", "1,3,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn geodesic_to_a_point() {
    let v = json(&["geodesic", "--geometry", "s2r", "--to", "2,1,0"]);
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 64);
    for p in pts {
        let (x, y, z) = (p[0].as_f64().unwrap(), p[1].as_f64().unwrap(), p[2].as_f64().unwrap());
        assert!(x * x + y * y + z * z > 0.0);
    }
    let end = &pts[63];
    assert!(close(&end[0], 2.0, 1e-9) && close(&end[1], 1.0, 1e-9) && close(&end[2], 0.0, 1e-9));
    assert!(close(&v["u"], 0.0, 1e-12));
    assert!(close(&v["v"], (0.5 * 5f64.ln()).atan2(0.5f64.atan()), 1e-12));
}

#[test]
fn geodesic_from_parameters() {
    let v = json(&["geodesic", "--geometry", "s2r", "--params", "0,1.5708,1"]);
    let end = &v["endpoint"];
    assert!(close(&end[0], std::f64::consts::E, 1e-6));
    assert!(close(&end[1], 0.0, 1e-4) && close(&end[2], 0.0, 1e-4));

    let v = json(&["geodesic", "--geometry", "h2r", "--params", "0,0,1", "--samples", "5"]);
    assert!(close(&v["endpoint"][0], 1f64.cosh(), 1e-12));
    assert_eq!(v["points"].as_array().unwrap().len(), 5);

    let o = thurston(&["geodesic", "--geometry", "s2r"]);
    assert!(!o.status.success());
    let o = thurston(&["geodesic", "--geometry", "s2r", "--to", "2,1,0", "--params", "0,0,1"]);
    assert!(!o.status.success());
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = [
        "verify",
        "--geometry",
        "h2r",
        "--trials",
        "500",
        "--seed",
        "42",
        "--format",
        "json",
    ];
    let a = thurston(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    let b = thurston(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["suites"].as_array().unwrap().len(), 5);

    let v = json(&["verify", "--geometry", "s2r", "--trials", "1"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["suites"][0]["trials"], 1);
}

#[test]
fn verify_reports_the_violated_invariant() {
    let o = thurston(&[
        "verify",
        "--geometry",
        "s2r",
        "--trials",
        "2",
        "--inject-fault",
        "isometry-invariance:1e-3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("FAIL isometry-invariance"), "{err}");
    assert!(err.contains("distance(p, q) = distance(T p, T q)"), "{err}");
    assert!(err.contains("trial 0"), "{err}");

    let o = thurston(&["verify", "--geometry", "s2r", "--trials", "0"]);
    assert!(!o.status.success());
}

#[test]
fn precision_flag_and_environment() {
    let o = thurston(&[
        "triangle",
        "--geometry",
        "h2r",
        "--a2",
        "2,1.5,1",
        "--a3",
        "3,-1,0",
        "--format",
        "csv",
        "--precision",
        "3",
    ]);
    assert!(stdout(&o).contains("1.932,0.493,0.698,3.123"));

    let o = Command::new(env!("CARGO_BIN_EXE_thurston"))
        .args([
            "triangle",
            "--geometry",
            "h2r",
            "--a2",
            "2,1.5,1",
            "--a3",
            "3,-1,0",
            "--format",
            "csv",
        ])
        .env("THURSTON_PRECISION", "2")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("1.93,0.49,0.70,3.12"));
}
