use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metric-lie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8")
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).expect("valid JSON")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("metric-lie-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const BERGER_FILE: &str = "\
name: berger from file
dim: 3
basis: X1 X2 X3
brackets:
  1 2 -> 3: 2
  2 3 -> 1: 2
  1 3 -> 2: -2
metric:
  eps, 0, 0
  0, 1, 0
  0, 0, 1
";

#[test]
fn report_json_ricci_diagonal() {
    let v = json(&["report", "--berger", "--format", "json"]);
    assert_eq!(v["schema"], "1");
    assert_eq!(
        v["ricci"]["diagonal"],
        serde_json::json!(["2*eps^2", "4-2*eps", "4-2*eps"])
    );
    assert_eq!(v["ricci"]["einstein"], Value::Null);
}

#[test]
fn report_json_is_byte_identical_across_runs() {
    let a = run(&["report", "--berger", "--format", "json"]);
    let b = run(&["report", "--berger", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_lists_discrepancies_and_exceptional_values() {
    let v = json(&["report", "--berger", "--format", "json"]);
    let items: Vec<&str> = v["discrepancies"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["item"].as_str().unwrap())
        .collect();
    assert!(items.iter().any(|i| i.contains("Lambda_1 entry (3, 3)")), "{items:?}");
    assert!(items.iter().any(|i| i.contains("additive constant")), "{items:?}");
    let eps: Vec<&str> = v["exceptional_eps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["eps"].as_str().unwrap())
        .collect();
    assert!(eps.contains(&"0") && eps.contains(&"1"), "{eps:?}");
    let text = stdout(&run(&["report", "--berger"]));
    assert!(text.contains("== discrepancies with published values =="));
    assert!(text.contains("published 1, computed 0"));
}

fn leaves(v: &Value, out: &mut String) {
    match v {
        Value::String(s) => out.push_str(s),
        Value::Array(a) => a.iter().for_each(|x| leaves(x, out)),
        Value::Object(m) => m.iter().for_each(|(k, x)| {
            out.push_str(k);
            out.push('\n');
            leaves(x, out)
        }),
        other => out.push_str(&other.to_string()),
    }
    out.push('\n');
}

/// Drops unmatched parentheses at either end.
fn balanced(mut t: &str) -> &str {
    while t.matches('(').count() > t.matches(')').count() {
        t = &t[t.find('(').unwrap() + 1..];
    }
    while t.matches(')').count() > t.matches('(').count() {
        t = &t[..t.rfind(')').unwrap()];
    }
    t
}

#[test]
fn json_carries_the_text_values() {
    let v = json(&["report", "--berger", "--eps", "-1/2", "--format", "json"]);
    let mut haystack = String::new();
    leaves(&v, &mut haystack);
    let haystack: String = haystack
        .chars()
        .filter(|c| *c != ' ')
        .collect::<String>()
        .to_lowercase();
    let text = stdout(&run(&["report", "--berger", "--eps", "-1/2"]));
    let mut checked = 0;
    for line in text.lines() {
        for raw in line.split(|c: char| c.is_whitespace() || ",;{}[]=:".contains(c)) {
            let token = balanced(raw);
            if token.contains('_') || !(token.contains("eps") || token.chars().any(|c| c.is_ascii_digit())) {
                continue;
            }
            assert!(
                haystack.contains(&token.to_lowercase()),
                "text value `{token}` from `{line}` missing in JSON"
            );
            checked += 1;
        }
    }
    assert!(checked > 100, "only {checked} values compared");
}

#[test]
fn soliton_summary_line() {
    let o = run(&["soliton", "--berger"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.lines()
            .any(|l| l == "generic: no homogeneous Ricci soliton; exceptional eps=1: Einstein, lambda=2"),
        "{text}"
    );
    assert!(text.contains("exceptional eps=0: degenerate metric"));
}

#[test]
fn soliton_doubled_convention_keeps_the_verdict() {
    let v = json(&[
        "soliton",
        "--berger",
        "--soliton-convention",
        "doubled",
        "--format",
        "json",
    ]);
    assert_eq!(v["soliton"]["convention"], "doubled");
    assert_eq!(
        v["soliton"]["summary"],
        "generic: no homogeneous Ricci soliton; exceptional eps=1: Einstein, lambda=2"
    );
}

#[test]
fn eval_lorentzian_point() {
    let v = json(&["eval", "--berger", "--eps", "-1", "--format", "json"]);
    let n = &v["numeric"];
    assert_eq!(n["signature"], "Lorentzian");
    let eig: Vec<f64> = n["laplacian_eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(eig.len(), 2);
    assert!((eig[0] - 2.0).abs() < 1e-12 && (eig[1] - 10.0).abs() < 1e-12, "{eig:?}");
    assert_eq!(n["symbolic_eigenvalues"], serde_json::json!(["2", "10"]));
}

#[test]
fn eval_at_degenerate_point_reports_the_error() {
    let v = json(&["eval", "--berger", "--eps", "0", "--format", "json"]);
    assert!(v["numeric"]["error"].as_str().unwrap().contains("singular"));
}

#[test]
fn walker_verdicts() {
    let v = json(&["walker", "--abelian", "--format", "json"]);
    assert_eq!(v["walker"]["walker"], true);
    assert_eq!(v["walker"]["witness"], "X1 + X2");
    let v = json(&["walker", "--berger", "--branch", "negative", "--format", "json"]);
    assert_eq!(v["walker"]["walker"], false);
    assert_eq!(v["walker"]["branch"], "eps < 0");
}

#[test]
fn single_analysis_commands_succeed() {
    for cmd in ["harmonic", "energy", "killing", "geodesic", "ledger", "validate"] {
        for src in ["--berger", "--abelian"] {
            let o = run(&[cmd, src]);
            assert_eq!(o.status.code(), Some(0), "{cmd} {src}: {}", stderr(&o));
        }
    }
    let text = stdout(&run(&["killing", "--berger"]));
    assert!(text.contains("generic: span{X1} (dimension 1)"));
    let text = stdout(&run(&["geodesic", "--berger"]));
    assert!(text.contains("generic: {a = 0} U {b = 0, c = 0}"));
}

#[test]
fn algebra_file_matches_builtin() {
    let path = temp_file("berger.alg", BERGER_FILE);
    let p = path.to_str().unwrap();
    let from_file = json(&["report", "--algebra", p, "--format", "json"]);
    let builtin = json(&["report", "--berger", "--format", "json"]);
    assert_eq!(from_file["connection"]["operators"], builtin["connection"]["operators"]);
    for key in [
        "curvature",
        "ricci",
        "soliton",
        "killing",
        "geodesic",
        "harmonic",
        "ledger",
    ] {
        assert_eq!(from_file[key], builtin[key], "{key}");
    }
    let o = run(&["validate", "--algebra", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid"));
}

#[test]
fn validation_failure_exits_one() {
    let broken = BERGER_FILE
        .replace("  1 2 -> 3: 2", "  1 2 -> 3: 2\n  1 2 -> 1: 1")
        .replace("name: berger from file", "name: broken");
    let path = temp_file("broken.alg", &broken);
    let o = run(&["report", "--algebra", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Jacobi"), "{}", stderr(&o));
}

#[test]
fn parse_error_exits_one_with_position() {
    let path = temp_file("bad.alg", &BERGER_FILE.replace("0, 1, 0", "0, 1/(eps-eps), 0"));
    let o = run(&["validate", "--algebra", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!stderr(&o).is_empty());
}

#[test]
fn usage_errors_exit_two_and_name_the_flag() {
    let o = run(&["report"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--berger"));

    let o = run(&["report", "--berger", "--abelian"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--abelian"));

    let o = run(&["eval", "--berger", "--eps", "eps"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--eps"));

    let o = run(&["report", "--berger", "--format", "yaml"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--format"));

    let o = run(&["killing", "--algebra", "/nonexistent/algebra.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--algebra"));
}
