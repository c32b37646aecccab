use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn problem(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name)
}

fn dimpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimpoly")).args(args).output().unwrap()
}

fn temp_problem(src: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".toml").tempfile().unwrap();
    f.write_all(src.as_bytes()).unwrap();
    f
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

fn json_report(path: &Path, extra: &[&str]) -> (Value, String) {
    let mut args = vec![path.to_str().unwrap(), "--json", "-"];
    args.extend_from_slice(extra);
    let out = dimpoly(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    (serde_json::from_str(&text).unwrap(), text)
}

#[test]
fn free_extension_report() {
    let (doc, _) = json_report(&problem("free_1_1.toml"), &["--partition-mode", "total"]);
    assert_eq!(doc["tool"], "dimpoly");
    assert!(doc["input_digest"].as_str().unwrap().starts_with("sha256:"));
    let rep = &doc["tasks"][0]["reports"][0];
    assert_eq!(rep["polynomial"]["coefficients"], serde_json::json!(["0", "0", "1"]));
    let inv = &rep["polynomial"]["invariants"];
    assert_eq!((inv["degree"].as_i64(), inv["leading"].as_str(), inv["top"].as_str()), (Some(2), Some("1"), Some("1")));
    assert_eq!(rep["oracle"]["agree"], true);
    assert_eq!(rep["oracle"]["r_max"], 6);
    let values: Vec<u64> = rep["table"].as_array().unwrap().iter().map(|r| r["value"].as_u64().unwrap()).collect();
    assert_eq!(&values[..7], &[1, 3, 6, 10, 15, 21, 28]);
}

#[test]
fn blockwise_report_follows_mode() {
    let path = problem("free_1_1.toml");
    let (both, _) = json_report(&path, &["--verify", "3"]);
    assert_eq!(both["tasks"][0]["reports"].as_array().unwrap().len(), 2);
    let multi = &both["tasks"][0]["reports"][1]["polynomial"];
    assert_eq!(multi["form"], "multivariate");
    assert_eq!(multi["invariants"]["maximal"], serde_json::json!([[1, 1]]));
    let (block, _) = json_report(&path, &["--partition-mode", "blockwise", "--verify", "off"]);
    let reports = block["tasks"][0]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert!(reports[0]["oracle"].is_null());
}

#[test]
fn output_is_deterministic() {
    let path = problem("rational_functions.toml");
    let (_, a) = json_report(&path, &[]);
    let (_, b) = json_report(&path, &[]);
    assert_eq!(a, b);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("out.json");
    let out = dimpoly(&[path.to_str().unwrap(), "--json", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&file).unwrap(), a);
}

#[test]
fn text_numbers_match_json() {
    let path = problem("free_1_1.toml");
    let out = dimpoly(&[path.to_str().unwrap(), "--partition-mode", "total"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let (doc, _) = json_report(&path, &["--partition-mode", "total"]);
    let rep = &doc["tasks"][0]["reports"][0];
    assert!(text.contains(rep["polynomial"]["display"].as_str().unwrap()));
    for row in rep["table"].as_array().unwrap() {
        let line = format!(
            "{}  {}  {}  {}",
            row["r"][0],
            row["value"],
            row["polynomial"].as_str().unwrap(),
            row["oracle"]
        );
        let found = text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>().join("  ") == line);
        assert!(found, "row {} missing from text", line);
    }
}

#[test]
fn probe_values_and_verdict() {
    let (doc, _) = json_report(&problem("half_order.toml"), &[]);
    let task = &doc["tasks"][0];
    assert_eq!(task["kind"], "quasi_probe");
    let values: Vec<u64> = task["values"].as_array().unwrap().iter().map(|v| v["value"].as_u64().unwrap()).collect();
    assert_eq!(values, vec![0, 0, 1, 1, 2, 2, 3]);
    assert_eq!(task["verdict"]["verdict"], "not_eventually_polynomial");
}

#[test]
fn required_polynomial_fails_with_its_exit_code() {
    let src = std::fs::read_to_string(problem("half_order.toml")).unwrap() + "require_polynomial = true\n";
    let f = temp_problem(&src);
    let out = dimpoly(&[f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(7));
    let err = stderr_json(&out);
    assert_eq!(err["error"]["kind"], "NotEventuallyPolynomial");
    assert_eq!(err["error"]["task"], 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("quasi_probe"));
}

#[test]
fn toml_syntax_error_has_position() {
    let f = temp_problem("[signature]\nm = 1\nn = = 0\n");
    let out = dimpoly(&[f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = stderr_json(&out);
    assert_eq!(err["error"]["kind"], "ParseError");
    assert_eq!(err["error"]["location"]["line"], 3);
}

#[test]
fn operator_parse_error_points_into_string() {
    let src = "[signature]\nm = 1\nn = 0\n\n[extension]\ngenerators = 1\nrelations = [\"d1*e1 + d1^*e1\"]\n";
    let f = temp_problem(src);
    let out = dimpoly(&[f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let loc = &stderr_json(&out)["error"]["location"];
    assert_eq!(loc["line"], 7);
    let col = loc["column"].as_u64().unwrap();
    assert!((22..=28).contains(&col), "column {}", col);
}

#[test]
fn validation_errors() {
    let unknown = "[signature]\nm = 1\nn = 0\n[extension]\ngenerators = 1\n[[task]]\nkind = \"nonsense\"\n";
    let out = dimpoly(&[temp_problem(unknown).path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let err = stderr_json(&out);
    assert_eq!(err["error"]["task"], 1);
    assert_eq!(err["error"]["location"]["line"], 6);

    let unclosed = "[signature]\nm = 1\nn = 0\n[extension]\ngenerators = 1\n[[task]]\nkind = \"chi_intermediate\"\ngenerators = [\"d1*e1\"]\n";
    let out = dimpoly(&[temp_problem(unclosed).path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr_json(&out)["error"]["message"].as_str().unwrap().contains("closed"));

    let field = "[signature]\nm = 1\nn = 0\n[field]\nindeterminates = [\"x\"]\nderivations = [\"y\"]\n[extension]\ngenerators = 1\n";
    let out = dimpoly(&[temp_problem(field).path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(stderr_json(&out)["error"]["location"]["line"], 6);
}

#[test]
fn missing_file_and_bad_flags() {
    let out = dimpoly(&["/nonexistent/problem.toml"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"]["kind"], "Io");
    let path = problem("free_1_1.toml");
    let out = dimpoly(&[path.to_str().unwrap(), "--verify", "maybe"]);
    assert_eq!(out.status.code(), Some(2));
    let out = dimpoly(&[path.to_str().unwrap(), "--partition-mode", "sideways"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chain_and_bound_tasks() {
    let (doc, _) = json_report(&problem("chain.toml"), &[]);
    let chain = &doc["tasks"][0];
    assert_eq!(chain["members"][0], serde_json::json!(["e1"]));
    assert_eq!(chain["members"].as_array().unwrap().last().unwrap(), &serde_json::json!([]));
    assert_eq!(chain["audit"]["strictly_descending"], true);
    let bound = &doc["tasks"][1];
    assert_eq!(bound["kind"], "dim_bound");
    assert_eq!(bound["dim"], "1");
}

#[test]
fn comparison_over_rational_functions() {
    let (doc, _) = json_report(&problem("rational_functions.toml"), &[]);
    let cmp = &doc["tasks"][2];
    assert_eq!(cmp["kind"], "compare_generators");
    assert_eq!(cmp["agree"], true);
    assert_eq!(cmp["left_invariants"], cmp["right_invariants"]);
}

#[test]
fn non_invertible_change_is_rejected() {
    let src = "[signature]\nm = 1\nn = 0\n[extension]\ngenerators = 1\n[[task]]\nkind = \"compare_generators\"\nforward = [\"d1*e1 + e1\"]\nbackward = [\"e1\"]\n";
    let out = dimpoly(&[temp_problem(src).path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr_json(&out)["error"]["message"].as_str().unwrap().contains("not invertible"));
}

#[test]
fn oracle_mismatch_is_reported_with_rows() {
    use dimpoly::error::Kind;
    use dimpoly::problem::parse_problem;
    use dimpoly_core::kaehler::{chi_extension, ReportOptions};
    use dimpoly_core::oracle::TruncationWindow;

    let spec = parse_problem(&std::fs::read_to_string(problem("free_1_1.toml")).unwrap()).unwrap();
    let opts = ReportOptions { r_table: None, verify: Some(TruncationWindow::new(3, 2).unwrap()) };
    let mut rep = chi_extension(&spec.extension, None, &opts).unwrap();
    assert!(dimpoly::run::oracle_failure(&rep, 1).is_none());
    rep.oracle.as_mut().unwrap().mismatches.push(vec![2]);
    let e = dimpoly::run::oracle_failure(&rep, 1).unwrap();
    assert_eq!((e.kind, e.kind.exit_code(), e.rows.clone()), (Kind::OracleMismatch, 5, vec![vec![2]]));
    assert!(e.to_json().contains("\"rows\":[[2]]"));
}
