use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn segre(args: &[&str], job: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_segre"))
        .arg(args[0])
        .arg("-")
        .args(&args[1..])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(job.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn segre_report() {
    let o = segre(&["segre"], "ring Q[x,y,z]\nlet I = ⟨y*z, x*z, x*y⟩\n");
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["e"], serde_json::json!([0, 3, 2]));
    assert_eq!(v["result"]["m"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["result"]["agreement"], Value::Bool(true));
    assert_eq!(v["status"], "ok");
}

#[test]
fn rees_exit_codes() {
    let job = "ring Q[x,y]\nlet I = <x^2, y^2>\nlet J = <x^2, x*y, y^2>\nlet K = <x, y>\n";
    let o = segre(&["rees"], job);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["verdict"], "closure_equal");
    let o = segre(&["rees", "I", "K"], job);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["result"]["verdict"], "closure_not_equal");
    let o = segre(&["rees", "I", "Q"], job);
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_segre"))
        .args(["rees", "/nonexistent/job"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn negative_verdict_exits_two() {
    let dir = std::env::temp_dir().join(format!("segre-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rees.job");
    std::fs::write(&path, "ring Q[x,y]\nlet I = <x^2, y^2>\nlet K = <x, y>\ncmd rees I K\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_segre"))
        .args(["run", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["result"]["verdict"], "closure_not_equal");
    assert_eq!(json(&o)["status"], "negative");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn expansion_check_passes() {
    let o = segre(&["expansion-check"], "ring Q[x,y]\nlet I = <x, y>\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["all_hold"], Value::Bool(true));
}

#[test]
fn parse_errors_name_line_and_column() {
    let o = segre(&["segre"], "ring Q[x,y]\n# comment\nlet I = <x, y +* 2>\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3, column 16"), "{err}");
}

#[test]
fn budget_exhaustion_names_the_stage() {
    let o = segre(
        &["segre", "--max-reductions", "3"],
        "ring Q[x,y,z]\nlet I = <x^3 + y^4 + z^5, x*y*z>\n",
    );
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("budget exceeded in"), "{err}");
}

#[test]
fn options_reach_the_report() {
    let o = segre(
        &["family", "--samples", "t=0;t=1", "--trials", "2", "--seed", "5", "--json-indent", "0"],
        "ring Q[x,y] params[t]\nlet f = x^2 - y^3 + t*x*y^2\n",
    );
    let v = json(&o);
    assert_eq!(v["job"]["options"]["seed"], 5);
    assert_eq!(v["job"]["options"]["trials"], 2);
    assert_eq!(o.stdout.iter().filter(|&&b| b == b'\n').count(), 1);
    let codes: Vec<&str> = v["warnings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["code"].as_str().unwrap())
        .collect();
    assert_eq!(codes, ["sample_witness"]);

    let o = segre(&["le", "--field", "fp:1048583"], "ring Q[x,y]\nlet f = x^3 + y^3\n");
    let v = json(&o);
    assert_eq!(v["job"]["field"], "Fp(1048583)");
    assert_eq!(v["result"]["lambda"], serde_json::json!([0, 4]));
    assert_eq!(v["warnings"][0]["code"], "fp_probabilistic");
}
