use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_obslab");

fn obslab(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("OBSLAB_QUAD_TOL").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

/// Header and rows of a CSV report, with every row as a column-name lookup.
fn parse(out: &Output) -> Vec<Vec<(String, String)>> {
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    r.records()
        .map(|rec| header.iter().cloned().zip(rec.unwrap().iter().map(String::from)).collect())
        .collect()
}

fn field<'a>(row: &'a [(String, String)], name: &str) -> &'a str {
    &row.iter().find(|(k, _)| k == name).unwrap_or_else(|| panic!("no column {name}")).1
}

fn number(row: &[(String, String)], name: &str) -> f64 {
    field(row, name).parse().unwrap()
}

#[test]
fn certify_heat_reports_valid() {
    let out = obslab(&["certify", "--demo", "heat1d", "--modes", "16", "--beta", "0.5"]);
    assert_eq!(code(&out), 0);
    let rows = parse(&out);
    assert_eq!(rows.len(), 1);
    assert!((number(&rows[0], "mCertSq") - 0.490225).abs() < 1e-4);
    assert_eq!(number(&rows[0], "reference_mSq"), 0.5);
    assert_eq!(field(&rows[0], "reference"), "mSq(inf)");
    assert_eq!(field(&rows[0], "verdict"), "VALID");
    assert_eq!(field(&rows[0], "constant_convention"), "proof_chain");
}

#[test]
fn certify_above_half_is_a_precondition_failure() {
    let out = obslab(&["certify", "--demo", "heat1d", "--modes", "16", "--beta", "0.75"]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("square-function"));
    assert!(out.stdout.is_empty());
}

#[test]
fn certify_finite_schrodinger() {
    let out = obslab(&["certify", "--demo", "schrodinger1d", "--modes", "8", "--omega", "1"]);
    assert_eq!(code(&out), 0);
    let row = &parse(&out)[0];
    assert_eq!(field(row, "scope"), "finite");
    assert!(number(row, "mFiniteSq") <= number(row, "reference_mSq"));
    assert_eq!(field(row, "verdict"), "VALID");
}

#[test]
fn precondition_exit_codes() {
    assert_eq!(code(&obslab(&["certify", "--demo", "heat1d", "--omega", "0"])), 4);
    assert_eq!(code(&obslab(&["certify", "--demo", "wave", "--modes", "4"])), 4);
    assert_eq!(code(&obslab(&["gram", "--demo", "wave", "--modes", "2", "--tau", "inf"])), 4);
}

#[test]
fn window_scan_is_monotone() {
    let out = obslab(&["window-scan", "--demo", "wave", "--modes", "64", "--taus", "2:8:1"]);
    assert_eq!(code(&out), 0);
    let rows = parse(&out);
    assert_eq!(rows.len(), 7);
    for w in rows.windows(2) {
        assert!(number(&w[1], "mSq") >= number(&w[0], "mSq"));
        assert!(number(&w[1], "MSq") >= number(&w[0], "MSq"));
    }
}

#[test]
fn negative_verdicts_exit_zero() {
    let out = obslab(&["bfc", "--demo", "heat1d", "--modes", "64"]);
    assert_eq!(code(&out), 0);
    assert_eq!(field(&parse(&out)[0], "verdict"), "NOT_FOUND");
    let out = obslab(&["squarefn", "--demo", "heat1d", "--beta", "0.75"]);
    assert_eq!(code(&out), 0);
    let row = &parse(&out)[0];
    assert_eq!(field(row, "verdict"), "FAILS_ON_FAMILY");
    assert!((number(row, "fitted_exponent") + 0.5).abs() < 1e-6);
}

#[test]
fn diagnose_reports_flags() {
    let out = obslab(&["diagnose", "--demo", "wave", "--modes", "8", "--etas", "0.5", "--taus", "8"]);
    assert_eq!(code(&out), 0);
    let row = &parse(&out)[0];
    assert_eq!(field(row, "flags"), "ExpectGroup(group_extendable=true)");
    assert_eq!(field(row, "group_extendable"), "true");
}

#[test]
fn invalid_input_exit_codes() {
    assert_eq!(code(&obslab(&["certify"])), 2);
    assert_eq!(code(&obslab(&["certify", "--demo", "nope"])), 2);
    assert_eq!(code(&obslab(&["certify", "--demo", "heat1d", "--scenario", "x.json"])), 2);
    assert_eq!(code(&obslab(&["window-scan", "--demo", "heat1d", "--taus", "1:2"])), 2);
    assert_eq!(code(&obslab(&["window-scan", "--demo", "heat1d", "--taus", "2,1"])), 2);
    assert_eq!(code(&obslab(&["certify", "--scenario", "/nonexistent.json"])), 2);
    assert_eq!(code(&obslab(&["certify", "--demo", "heat1d", "--quad-tol", "1e-3"])), 2);
    assert_eq!(code(&obslab(&["certify", "--demo", "heat1d", "--modes", "0"])), 2);
}

#[test]
fn quad_tol_from_environment() {
    let base = ["certify", "--demo", "heat1d", "--modes", "4"];
    let out = Command::new(BIN).args(base).env("OBSLAB_QUAD_TOL", "1e-3").output().unwrap();
    assert_eq!(code(&out), 2);
    let out = Command::new(BIN).args(base).env("OBSLAB_QUAD_TOL", "1e-7").output().unwrap();
    assert_eq!(code(&out), 0);
    // The flag wins over the environment.
    let out = Command::new(BIN).args(base).args(["--quad-tol", "1e-9"]).env("OBSLAB_QUAD_TOL", "1e-3").output().unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn scenario_file_round_trip_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("heat.json");
    let p = path.to_str().unwrap();
    let out = obslab(&["demo", "--demo", "heat1d", "--modes", "6", "--out", p]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let from_file = obslab(&["certify", "--scenario", p]);
    let from_demo = obslab(&["certify", "--demo", "heat1d", "--modes", "6"]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(from_file.stdout, from_demo.stdout);

    std::fs::write(&path, r#"{"label": "x", "output_dim": 1, "modes": []}"#).unwrap();
    let out = obslab(&["certify", "--scenario", p]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("modes"));
}

#[test]
fn unwritable_output_is_an_input_error() {
    let out = obslab(&["demo", "--demo", "heat1d", "--out", "/nonexistent/dir/x.json"]);
    assert_eq!(code(&out), 2);
    assert!(!Path::new("/nonexistent/dir/x.json").exists());
}

#[test]
fn csv_values_round_trip() {
    let out = obslab(&["gram", "--demo", "schrodinger1d", "--modes", "3", "--tau", "0.3"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.starts_with("row,col,re,im\n") && !text.contains('\r'));
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    for row in parse(&out) {
        let (i, j) = (field(&row, "row"), field(&row, "col"));
        if i == j {
            let n: f64 = i.parse::<f64>().unwrap() + 1.0;
            // G[n][n] = (nπ)² τ
            assert!((number(&row, "re") - n * n * pi2 * 0.3).abs() <= 1e-12 * n * n * pi2);
        }
    }
}

#[test]
fn error_classes_map_to_exit_codes() {
    use obslab::CliError;
    use obslab_core::Error;
    assert_eq!(CliError::from(Error::NoConvergence { sweeps: 100 }).exit_code(), 3);
    assert_eq!(CliError::from(Error::ToleranceNotMet).exit_code(), 3);
    assert_eq!(CliError::from(Error::NoFiniteTau).exit_code(), 4);
    assert_eq!(CliError::from(Error::NotExactlyObservable).exit_code(), 4);
    assert_eq!(CliError::from(Error::NotPsd { min_eigenvalue: -1.0 }).exit_code(), 2);
}
