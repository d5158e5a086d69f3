use std::io::Write;
use std::process::{Command, Output, Stdio};

fn pseudou(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pseudou"))
        .args(args)
        .env_remove("PSEUDOU_PRECISION")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

const HYPERBOLIC: &str = r#"{"dim": 2, "entries": [[[1.25, 0], [0.75, 0]], [[0.75, 0], [1.25, 0]]]}"#;
const ROTATION: &str = r#"{"dim": 2, "entries": [[[0.6, 0.8], [0, 0]], [[0, 0], [0.6, -0.8]]]}"#;

#[test]
fn documented_examples() {
    let o = pseudou(&["verlinde", "--g", "3", "--p", "7"], "");
    assert!(o.status.success());
    assert_eq!(json(&o), serde_json::json!({"N": 98}));
    assert_eq!(json(&pseudou(&["theta", "--p", "9"], "")), serde_json::json!({"theta": 3}));
    assert_eq!(
        json(&pseudou(&["recurrence", "--p", "5", "--zeta", "1", "--mod", "5"], "")),
        serde_json::json!({"period": 24, "zeros_mod_24": [4, 10, 16, 22]})
    );
}

#[test]
fn matrix_subcommands() {
    let req = format!(r#"{{"matrix": {ROTATION}, "form": {{"m": 1, "n": 1}}}}"#);
    let o = pseudou(&["dgw-phase"], &req);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let phase = json(&o)["phase"].as_f64().unwrap();
    let want = (0.8f64.atan2(0.6) / (2.0 * std::f64::consts::PI)).rem_euclid(1.0);
    assert!((phase - want).abs() < 1e-12, "{phase} vs {want}");

    let o = pseudou(&["canonical-form"], &req);
    assert!(o.status.success());
    assert!(json(&o)["residual"].as_f64().unwrap() < 1e-9);

    let req = format!(r#"{{"matrix": {HYPERBOLIC}, "form": {{"m": 1, "n": 1}}}}"#);
    let v = json(&pseudou(&["commutators"], &req));
    assert!(v["residual"].as_f64().unwrap() < 1e-10);
    assert!(v["pairs"].as_array().unwrap().len() <= 28);

    let req = format!(r#"{{"g1": {HYPERBOLIC}, "g2": {ROTATION}, "form": {{"m": 1, "n": 1}}}}"#);
    let o = pseudou(&["cocycle"], &req);
    assert!(o.status.success());
    assert!(json(&o)["cocycle"].is_f64());
}

#[test]
fn explicit_form_matrix() {
    // the same rotation against the form diag(2, -3)
    let form = r#"{"dim": 2, "entries": [[[2, 0], [0, 0]], [[0, 0], [-3, 0]]]}"#;
    let req = format!(r#"{{"matrix": {ROTATION}, "form": {form}}}"#);
    let o = pseudou(&["dgw-phase"], &req);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn exit_codes() {
    let o = pseudou(&["theta"], r#"{"p": 9,"#);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 1 column"), "{err}");

    let bad = r#"{"matrix": {"dim": 2, "entries": [[[2, 0], [0, 0]], [[0, 0], [2, 0]]]}, "form": {"m": 1, "n": 1}}"#;
    assert_eq!(pseudou(&["dgw-phase"], bad).status.code(), Some(2));
    assert_eq!(pseudou(&["signature", "--g", "2", "--p", "5", "--zeta", "2"], "").status.code(), Some(2));
    assert_eq!(pseudou(&["count-roots", "--g", "3", "--p", "7"], "").status.code(), Some(2));
    assert_eq!(pseudou(&["no-such-command"], "").status.code(), Some(2));
    assert_eq!(pseudou(&["theta", "--p", "9", "--tol", "-1"], "").status.code(), Some(2));
    assert_eq!(pseudou(&["count-roots", "--g", "10", "--p", "23"], "").status.code(), Some(0));
}

#[test]
fn precision_flag_and_environment() {
    assert_eq!(pseudou(&["theta", "--p", "5", "--precision", "63"], "").status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_pseudou"))
        .args(["theta", "--p", "5"])
        .env("PSEUDOU_PRECISION", "8")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_pseudou"))
        .args(["theta", "--p", "5"])
        .env("PSEUDOU_PRECISION", "256")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn input_and_output_files() {
    let dir = std::env::temp_dir().join(format!("pseudou-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("req.json");
    let output = dir.join("out.json");
    std::fs::write(&input, r#"{"g": 4, "p": 7, "zeta_exponent": 1}"#).unwrap();
    let o = pseudou(
        &["signature", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap()],
        "",
    );
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(v["sigma"], 29);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn big_integers_are_strings() {
    let v = json(&pseudou(&["recurrence", "--p", "9", "--zeta", "5", "--terms", "15"], ""));
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms[10], serde_json::json!(6930952607259i64));
    assert!(terms[14].is_string());
    let text = terms[14].as_str().unwrap();
    assert!(text.parse::<num_bigint::BigInt>().is_ok());
}

#[test]
fn output_is_byte_identical() {
    let req = format!(r#"{{"matrix": {HYPERBOLIC}, "form": {{"m": 1, "n": 1}}}}"#);
    let a = pseudou(&["commutators", "--seed", "5"], &req);
    let b = pseudou(&["commutators", "--seed", "5"], &req);
    assert_eq!(a.stdout, b.stdout);
    let a = pseudou(&["burau", "--strands", "5", "--word", "1,-2,3,-4,2", "--turns", "0.07"], "");
    let b = pseudou(&["burau", "--strands", "5", "--word", "1,-2,3,-4,2", "--turns", "0.07"], "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn burau_reports() {
    let v = json(&pseudou(&["burau", "--strands", "4", "--word", "1,1", "--turns", "0.1"], ""));
    assert_eq!(v["pure"], true);
    assert_eq!(v["singular"], false);
    assert_eq!(v["definiteness"]["window"], true);
    let v = json(&pseudou(&["burau"], r#"{"strands": 4, "word": [2, -1], "turns": 0.25}"#));
    assert_eq!(v["singular"], true);
}

#[test]
fn table_output() {
    let o = pseudou(&["count-roots", "--g", "5", "--p", "31", "--format", "table"], "");
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("count")));
    let o = pseudou(&["recurrence", "--p", "7", "--zeta", "1", "--format", "table"], "");
    assert_eq!(stdout(&o).lines().count(), 11);
}

#[test]
fn reproduce_paper_passes() {
    let o = pseudou(&["reproduce-paper"], "");
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["passed"], 12);
}
