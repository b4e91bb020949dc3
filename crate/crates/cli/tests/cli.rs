use std::path::PathBuf;
use std::process::Command;

use qmoyal_cli::run_to;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["qmoyal"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_to(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn stdout(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "args {args:?} failed: {err}");
    out.trim_end().to_string()
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["star", "--product", "q-standard", "p", "x^2"]), "q^2 p x^2 + (1+q) h x");
    assert_eq!(stdout(&["normal-order", "P X"]), "q X P + h");
    assert_eq!(stdout(&["normal-order", "P X - q X P"]), "h");
}

#[test]
fn hand_computed_values() {
    // X P = q^-1 P X - q^-1 h in antistandard order
    assert_eq!(stdout(&["normal-order", "--ordering", "antistandard", "X P"]), "q^-1 P X - q^-1 h");
    // [2] h (P X + q^2 X P) with P X = q X P + h
    assert_eq!(stdout(&["qcomm", "P^2", "X^2"]), "(q+2*q^2+q^3) h X P + (1+q) h^2");
    assert_eq!(stdout(&["qcomm", "P", "X"]), "h");
    assert_eq!(stdout(&["poisson", "p", "x"]), "1");
    assert_eq!(stdout(&["poisson", "x", "p"]), "-1");
    // ordinary Weyl: {p^3, x^3} = 9 p^2 x^2 + (3/2) h^2 at q = 1
    assert_eq!(stdout(&["moyal", "--product", "hbar-weyl", "p^3", "x^3"]), "9 p^2 x^2 + 3/2 h^2");
    assert_eq!(stdout(&["moyal", "p^2 x", "p x^2"]), "(q^2+2*q^3) p^2 x^2 + (q+q^2) h p x");
    assert_eq!(stdout(&["star", "--product", "hbar-standard", "p", "x"]), "p x + h");
    assert_eq!(stdout(&["--q1", "star", "p", "x"]), "p x + h");
}

#[test]
fn json_outputs_parse() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--format", "json", "star", "p", "x"])).unwrap();
    assert_eq!(v["result"], "q p x + h");
    assert_eq!(v["product"], "q-standard");
    let v: serde_json::Value = serde_json::from_str(&stdout(&["verify", "base", "--format", "json"])).unwrap();
    assert_eq!(v[0]["check"], "base-relation");
    assert_eq!(v[0]["n_cases"], v[0]["n_match"]);
}

#[test]
fn golden_files() {
    assert_eq!(stdout(&["demo", "point-transform"]), golden("demo_point_transform.txt").trim_end());
    assert_eq!(stdout(&["demo", "leibniz"]), golden("demo_leibniz.txt").trim_end());
    assert_eq!(stdout(&["demo", "kinetic", "--exponent", "1/2"]), golden("demo_kinetic_half.txt").trim_end());
    assert_eq!(
        stdout(&["tabulate", "--grid", "2", "--format", "csv"]),
        golden("tabulate_standard_grid2.csv").trim_end()
    );
    assert_eq!(
        stdout(&["tabulate", "--grid", "2", "--ordering", "antistandard"]),
        golden("tabulate_antistandard_grid2.txt").trim_end()
    );
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["normal-order", "P^(1/2)"]);
    assert_eq!(code, 1);
    assert!(err.contains("byte 4"), "{err}");
    assert_eq!(run(&["star", "x^(1/3)", "p"]).0, 1);
    assert_eq!(run(&["--root-denominator", "3", "star", "x^(1/3)", "p"]).0, 0);
    assert_eq!(run(&["no-such-command"]).0, 1);
    assert_eq!(run(&["verify", "no-such-check"]).0, 1);
    assert_eq!(run(&["verify", "base", "--grid", "7"]).0, 1);
    assert_eq!(run(&["--root-denominator", "0", "star", "p", "x"]).0, 1);
    assert_eq!(run(&["star", "p", "x", "--format", "csv"]).0, 1);
    assert_eq!(run(&["moyal", "--product", "hbar-standard", "p / x", "x"]).0, 1);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify-all"));
    assert_eq!(run(&["verify", "obstruction"]).0, 0);
}

#[test]
fn hard_failures_exit_two() {
    use qmoyal_core::conformance::{ConformanceReport, Expectation, Outcome};
    let ok = ConformanceReport::new("a", Expectation::Hard).with_cases([Outcome::new("c", "1", "1")]);
    let recorded = ConformanceReport::new("b", Expectation::Recorded).with_cases([Outcome::new("c", "1", "2")]);
    let failed = ConformanceReport::new("c", Expectation::Hard).with_cases([Outcome::new("c", "1", "2")]);
    assert_eq!(qmoyal_cli::exit_code_for(&[ok.clone(), recorded.clone()]), 0);
    assert_eq!(qmoyal_cli::exit_code_for(&[ok, recorded, failed]), 2);
}

#[test]
fn grid_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qmoyal"))
        .args(["verify", "antistandard-q", "--format", "json"])
        .env("QMOYAL_GRID", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["n_cases"], 16);
    let out = Command::new(env!("CARGO_BIN_EXE_qmoyal"))
        .args(["verify", "antistandard-q"])
        .env("QMOYAL_GRID", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
