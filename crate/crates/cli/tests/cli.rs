use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn edgemap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgemap")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = edgemap(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (v, out.status.code().unwrap())
}

#[test]
fn four_matchings_are_unavoidable() {
    let g6 = edgemap_graph6("4K2");
    let (v, code) = json(&["avoid", "--host", &g6, "--pattern", "2K2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["verdict"], "unavoidable");
}

fn edgemap_graph6(spec: &str) -> String {
    let (v, _) = json(&["avoid", "--named", spec, "--pattern", "2K2"]);
    v["results"][0]["host"].as_str().unwrap().to_string()
}

#[test]
fn h_of_four_is_six_on_k4() {
    let (v, code) = json(&["h", "--n", "4", "--pattern", "2K2"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], 6);
    assert_eq!(v["witness"]["graph6"], "C~");
}

#[test]
fn construct_verify_exit_codes() {
    assert_eq!(edgemap(&["construct", "split:t=3,n=12", "--verify"]).status.code(), Some(0));
    assert_eq!(edgemap(&["construct", "k6five", "--verify"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(edgemap(&["construct", "nosuchkind:n=3"]).status.code(), Some(3));
    assert_eq!(edgemap(&["avoid", "--host", "!!", "--pattern", "2K2"]).status.code(), Some(3));
    assert_eq!(edgemap(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(edgemap(&["h", "--n", "4", "--pattern", "2K2", "--time-limit", "0"]).status.code(), Some(3));
    assert_eq!(edgemap(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_breach_reports_incomplete() {
    let (v, code) = json(&[
        "avoid", "--named", "K6", "--pattern", "K1,2", "--d", "0", "--mode", "exclusive", "--max-nodes", "5",
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["complete"], false);
}

#[test]
fn certificates_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["h", "--n", "5", "--pattern", "2K2"],
        vec!["s", "--n", "4", "--pattern", "K1,2"],
        vec!["q", "--n", "4", "--pattern", "P3"],
        vec!["ex", "--n", "6", "--pattern", "K3"],
        vec!["construct", "trichain:k=2,delete=7"],
        vec!["construct", "dstar:r=2,k=2"],
    ] {
        let (v, code) = json(&args);
        assert_eq!(code, 0, "{args:?}");
        let path = dir.path().join("cert.json");
        std::fs::write(&path, v["certificate"].to_string()).unwrap();
        let out = edgemap(&["verify", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let (v, _) = json(&["h", "--n", "4", "--pattern", "2K2"]);
    let mut cert = v["certificate"].clone();
    // map every edge to the first listed edge
    let witness = &mut cert["witness"]["mapping"];
    let first = witness[0][0].clone();
    for pair in witness.as_array_mut().unwrap() {
        pair[1] = first.clone();
    }
    let mut child = Command::new(env!("CARGO_BIN_EXE_edgemap"))
        .args(["verify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(cert.to_string().as_bytes()).unwrap();
    assert_eq!(child.wait_with_output().unwrap().status.code(), Some(1));
}

#[test]
fn reports_do_not_depend_on_workers() {
    let one = edgemap(&["h", "--n", "6", "--pattern", "2K2", "--json", "--workers", "1"]);
    let four = edgemap(&["h", "--n", "6", "--pattern", "2K2", "--json", "--workers", "4"]);
    assert_eq!(one.stdout, four.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_edgemap"))
        .args(["census", "--pattern", "P3", "--max-order", "6", "--json"])
        .env("EDGEMAP_WORKERS", "2")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&env.stdout).unwrap();
    assert_eq!(v["status"], "complete");
    assert_eq!(v["members"].as_array().unwrap().len(), 5);
}

#[test]
fn hosts_from_stdin_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let mut child = Command::new(env!("CARGO_BIN_EXE_edgemap"))
        .args(["fast2k2", "--host", "-", "--out", out.to_str().unwrap()])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    // K4 then 4K2
    let four = edgemap_graph6("4K2");
    child.stdin.take().unwrap().write_all(format!("C~\n{four}\n").as_bytes()).unwrap();
    assert_eq!(child.wait_with_output().unwrap().status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["results"][0]["verdict"], "avoider");
    assert_eq!(v["results"][1]["verdict"], "unavoidable");
}

#[test]
fn acceptance_subset() {
    let (v, code) = json(&["acceptance", "--only", "5,6"]);
    assert_eq!(code, 0);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 2);
    assert_eq!(v["failed"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_accepts_whole_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = edgemap(&["construct", "trichain:k=3,delete=20", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(edgemap(&["verify", path.to_str().unwrap()]).status.code(), Some(0));
}
