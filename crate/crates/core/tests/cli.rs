use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_ricci-forge");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn col(rows: &[Vec<String>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn certifies_three_punctures_in_three_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = run(&[
        "--dim",
        "3",
        "--punctures",
        "3",
        "--out",
        out.to_str().unwrap(),
        "--quiet",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let report = read_json(&out);
    assert_eq!(report["overall"], "pass");
    assert_eq!(report["schema"], "ricci-forge/1");
    assert_eq!(report["params"]["R0"], 0.1);
    assert!(report["boundary"]["lambda"].is_null());
    // Nothing left behind by the atomic write.
    let names: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(names, vec![std::ffi::OsString::from("report.json")]);
}

#[test]
fn report_goes_to_stdout_without_out() {
    let o = run(&["--dim", "3", "--punctures", "1", "--grid", "500", "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["grid_points"], 500);
    assert!(o.stderr.is_empty());
}

#[test]
fn two_dimensional_sphere_is_a_usage_error() {
    let o = run(&["--dim", "2", "--punctures", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at least 3"));
}

#[test]
fn invalid_zeta_fails_definition_2_1c() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&[
        "--dim",
        "3",
        "--punctures",
        "1",
        "--set",
        "zeta=0.1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let report = read_json(&out);
    assert_eq!(report["overall"], "fail");
    let c = check(&report, "def_2_1c");
    assert_eq!(c["passed"], false);
    assert!(c["margin"].is_null());
    assert!(c["cause"].as_str().unwrap().contains("Definition 2.1(c)"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Definition 2.1(c)"));
}

#[test]
fn unknown_override_lists_valid_names() {
    let o = run(&["--dim", "3", "--punctures", "1", "--set", "psi=1e-9"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    for name in ["R0", "kappa", "zeta", "Lambda", "r0", "mu"] {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn malformed_flags_and_small_grids_are_usage_errors() {
    assert_eq!(
        run(&["--dim", "three", "--punctures", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["--dim", "3", "--punctures", "1", "--grid", "50"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["--dim", "3", "--punctures", "1", "--set", "mu"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["--dim", "3"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("r.json");
    let o = run(&[
        "--dim",
        "3",
        "--punctures",
        "1",
        "--grid",
        "200",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot write"));
}

#[test]
fn config_file_is_read_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out = dir.path().join("r.json");
    fs::write(
        &cfg,
        serde_json::json!({
            "n": 5,
            "p": 4,
            "grid_points": 300,
            "overrides": {"mu": 1e-9, "R0": 0.1},
            "out_report": out,
            "verbosity": "quiet"
        })
        .to_string(),
    )
    .unwrap();
    let o = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "--punctures",
        "2",
        "--set",
        "mu=2e-9",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(o.stderr.is_empty());
    let report = read_json(&out);
    assert_eq!(report["n"], 5);
    assert_eq!(report["p"], 2);
    assert_eq!(report["grid_points"], 300);
    assert_eq!(report["params"]["mu"], 2e-9);

    fs::write(&cfg, r#"{"n": 3, "p": 1, "colour": "blue"}"#).unwrap();
    assert_eq!(
        run(&["--config", cfg.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["--config", "/does/not/exist.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn csv_dumps_round_trip_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name);
    let args = [
        "--dim",
        "4",
        "--punctures",
        "2",
        "--grid",
        "2000",
        "--quiet",
        "--out",
        p("r.json").to_str().unwrap(),
        "--profile-csv",
        p("profile.csv").to_str().unwrap(),
        "--curvature-csv",
        p("curv.csv").to_str().unwrap(),
        "--boundary-csv",
        p("boundary.csv").to_str().unwrap(),
    ]
    .map(String::from);
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    assert_eq!(run(&args).status.code(), Some(0));
    let report = read_json(&p("r.json"));
    let r0 = report["params"]["r0"].as_f64().unwrap();
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-6 * b.abs().max(1.0);

    let (header, rows) = read_csv(&p("profile.csv"));
    assert_eq!(header, ["t", "R", "R1", "R2"]);
    assert!(
        rows[0][0].contains('e'),
        "17 significant digits in scientific form"
    );
    let (t, r, r1, r2) = (col(&rows, 0), col(&rows, 1), col(&rows, 2), col(&rows, 3));
    let slope = (0..t.len())
        .filter(|&i| t[i] <= r0)
        .map(|i| r1[i].min(1.0 - r1[i]))
        .fold(f64::INFINITY, f64::min);
    let margin = check(&report, "profile_slope_range")["margin"]
        .as_f64()
        .unwrap();
    assert!(close(slope, margin), "{slope} vs {margin}");
    let concavity = (1..t.len())
        .map(|i| -r2[i] / r[i])
        .fold(f64::INFINITY, f64::min);
    let margin = check(&report, "corollary_2_14_concavity")["margin"]
        .as_f64()
        .unwrap();
    assert!(close(concavity, margin), "{concavity} vs {margin}");

    let (header, rows) = read_csv(&p("curv.csv"));
    assert_eq!(
        header,
        [
            "t",
            "ric_TT",
            "ric_XX",
            "ric_SS",
            "pc_circle",
            "pc_sphere",
            "ki_YS",
            "ki_SS"
        ]
    );
    assert_eq!(rows.len(), t.len());
    let beyond = rows
        .iter()
        .find(|row| row[0].parse::<f64>().unwrap() > r0)
        .unwrap();
    assert!(beyond[4..].iter().all(String::is_empty));
    let ric_tt = col(&rows, 1).into_iter().fold(f64::INFINITY, f64::min);
    let margin = check(&report, "ricci_tt")["margin"].as_f64().unwrap();
    assert!(close(ric_tt, margin), "{ric_tt} vs {margin}");

    let (header, rows) = read_csv(&p("boundary.csv"));
    assert_eq!(header, ["s", "B", "B1", "B2", "K_rad", "K_tan"]);
    let s = col(&rows, 0);
    let (k_rad, k_tan) = (col(&rows, 4), col(&rows, 5));
    let len = *s.last().unwrap();
    let sectional = (0..s.len())
        .filter(|&i| s[i] > 0.0 && s[i] < len)
        .map(|i| k_rad[i].min(k_tan[i]) - 1.0)
        .fold(f64::INFINITY, f64::min);
    let margin = check(&report, "boundary_sectional_rescaled")["margin"]
        .as_f64()
        .unwrap();
    assert!(close(sectional, margin), "{sectional} vs {margin}");
    let tau = report["boundary"]["tau"].as_f64().unwrap();
    let peak = col(&rows, 1).into_iter().fold(f64::NEG_INFINITY, f64::max);
    assert!((peak - tau).abs() < 1e-6);

    // Deterministic: a second run writes identical bytes.
    let first = fs::read(p("profile.csv")).unwrap();
    let boundary_first = fs::read(p("boundary.csv")).unwrap();
    assert_eq!(run(&args).status.code(), Some(0));
    assert_eq!(first, fs::read(p("profile.csv")).unwrap());
    assert_eq!(boundary_first, fs::read(p("boundary.csv")).unwrap());
}

#[test]
fn failed_cascade_still_writes_csv_headers() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("profile.csv");
    let o = run(&[
        "--dim",
        "3",
        "--punctures",
        "1",
        "--set",
        "mu=1",
        "--quiet",
        "--out",
        dir.path().join("r.json").to_str().unwrap(),
        "--profile-csv",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let (header, rows) = read_csv(&csv_path);
    assert_eq!(header.len(), 4);
    assert!(rows.is_empty());
}

#[test]
fn verbose_lists_every_check() {
    let o = run(&[
        "--dim",
        "3",
        "--punctures",
        "1",
        "--grid",
        "200",
        "--verbose",
        "--out",
        "/dev/null",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("ricci_ss") && err.contains("gauss_crosscheck") && err.contains("PASS"));
}
