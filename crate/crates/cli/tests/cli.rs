//! End-to-end tests driving the compiled binary: output formats, the
//! documented exit codes, and a small figure reproduction.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyapprox"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn coeffs_prints_csv_with_known_values() {
    // x³ = (3/5)P₁ + (2/5)P₃.
    let out = run(&[
        "coeffs",
        "--function",
        "x^3",
        "--basis",
        "legendre",
        "--degree",
        "4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,coeff"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5);
    let a1: f64 = rows[1][1].parse().unwrap();
    let a3: f64 = rows[3][1].parse().unwrap();
    assert!((a1 - 0.6).abs() < 1e-12, "a1 = {a1}");
    assert!((a3 - 0.4).abs() < 1e-12, "a3 = {a3}");
}

#[test]
fn project_reports_max_error_location() {
    let out = run(&[
        "project",
        "--function",
        "(x-1/2)_+",
        "--degree",
        "24",
        "--grid",
        "101",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let argmax: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("argmax = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((argmax - 0.5).abs() < 0.1, "argmax = {argmax}");
}

#[test]
fn remez_prints_certificate_data() {
    let out = run(&["remez", "--function", "abs(x)", "--degree", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let levelled: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("levelled_error = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((levelled - 0.5).abs() < 1e-6, "levelled = {levelled}");
    assert!(text.contains("reference = ["));
}

#[test]
fn bounds_emits_satisfied_reports() {
    let out = run(&[
        "bounds",
        "--function",
        "1/(x-2)",
        "--degree",
        "8",
        "--rho",
        "3.0",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 4);
    for report in reports {
        let value = report["value"].as_f64().unwrap();
        let measured = report["satisfied_by"]["measured"].as_f64().unwrap();
        assert!(
            measured <= value + 1e-10,
            "{}: measured {measured} vs bound {value}",
            report["name"]
        );
    }
    let verdicts = String::from_utf8_lossy(&out.stderr);
    assert_eq!(verdicts.matches("SATISFIED").count(), 4);
}

#[test]
fn sweep_writes_csv_with_contract_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = run(&[
        "sweep",
        "--function",
        "ln(1.2+x)",
        "--nmin",
        "2",
        "--nmax",
        "10",
        "--stride",
        "2",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,err_P,err_T,err_B,ratio_P,ratio_T,scaled_ratio_P")
    );
    assert_eq!(lines.count(), 5); // n = 2, 4, 6, 8, 10
}

#[test]
fn sweep_writes_parsable_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let out = run(&[
        "sweep",
        "--function",
        "exp(x^5)",
        "--nmin",
        "1",
        "--nmax",
        "6",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["function_label"], "exp(x^5)");
    assert_eq!(value["degrees"].as_array().unwrap().len(), 6);
    assert!(value["err_P"].as_array().is_some());
}

#[test]
fn figure_three_reproduces_pointwise_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["figure", "--id", "3", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in [
        "fig3_pointwise_n50.csv",
        "fig3_pointwise_n50.svg",
        "fig3_pointwise_n100.csv",
        "fig3_pointwise_n100.svg",
    ] {
        assert!(dir.path().join(name).exists(), "{name} missing");
    }
    let svg = std::fs::read_to_string(dir.path().join("fig3_pointwise_n50.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<polyline").count(), 2);
}

#[test]
fn peano_prints_property_report() {
    let out = run(&["peano", "--m", "2", "--degree", "16"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let boundary: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("boundary_max = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(boundary < 1e-10);
}

#[test]
fn exit_codes_follow_the_contract() {
    // Usage errors: unknown flag, bad expression, bad degree.
    let out = run(&["sweep", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["coeffs", "--function", "nope(", "--basis", "legendre", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["remez", "--function", "abs(x)", "--degree", "900"]);
    assert_eq!(out.status.code(), Some(1));
    // Bounds on a function with no analytic continuation: usage error.
    let out = run(&["bounds", "--function", "abs(x)", "--degree", "4", "--rho", "2.0"]);
    assert_eq!(out.status.code(), Some(1));
    // I/O failure.
    let out = run(&[
        "sweep",
        "--function",
        "exp(x^5)",
        "--nmin",
        "1",
        "--nmax",
        "6",
        "--format",
        "csv",
        "--out",
        "/nonexistent-dir/sweep.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // Help exits 0.
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Usage"));
}

#[test]
fn coeffs_out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("coeffs.csv");
    let out = run(&[
        "coeffs",
        "--function",
        "exp(x)",
        "--basis",
        "chebyshev",
        "--degree",
        "8",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("k,coeff\n"));
    assert_eq!(text.lines().count(), 10);
    assert!(Path::new(&path).exists());
}
