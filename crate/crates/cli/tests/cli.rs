//! End-to-end tests of the `wplimit` binary: exit codes, report envelopes
//! and the sample inputs in `data/`.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    root.to_str().expect("utf-8 path").to_string()
}

fn wplimit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wplimit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str], code: i32) -> Value {
    let out = wplimit(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "args {args:?}\nstderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(v["schema"], "wplimit/1");
    v
}

#[test]
fn invariants_report() {
    let v = report(&["invariants", "--g1", "2", "--g2", "3", "--delta", "2"], 0);
    assert_eq!(v["command"], "invariants");
    assert_eq!(v["result"]["g"], 6);
    assert_eq!(v["result"]["twist"]["ell"], serde_json::json!([2, 1]));
    assert!(v["timing_ms"].is_u64());
}

#[test]
fn irreducible_profile() {
    let v = report(&["invariants", "--g1", "1", "--g2", "1", "--delta", "2"], 0);
    assert_eq!(v["result"]["irreducible"], true);
}

#[test]
fn unstable_profile_exits_2() {
    let v = report(&["invariants", "--g1", "0", "--g2", "0", "--delta", "1"], 2);
    assert_eq!(v["error"]["kind"], "precondition");
    assert_eq!(v["error"]["exit_code"], 2);
}

#[test]
fn schema_errors_exit_3() {
    let v = report(&["invariants", "--g1", "2"], 3);
    assert_eq!(v["error"]["kind"], "schema");
    let dir = std::env::temp_dir().join(format!("wplimit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"profile": {"g1": 1, "g2": 1, "delta": 2}, "bogus": 1}"#).unwrap();
    report(&["invariants", "--in", bad.to_str().unwrap()], 3);
    std::fs::write(&bad, r#"{"schema": "wplimit/0"}"#).unwrap();
    report(&["invariants", "--in", bad.to_str().unwrap()], 3);
    report(&["invariants", "--in", "/nonexistent/input.json"], 3);
}

#[test]
fn conjugate_pair_fails_condition_1_1() {
    let v = report(&["conditions", &data("conjugate-pair.json")], 2);
    let c = &v["result"]["conditions"][0];
    assert_eq!(c["condition1"]["condition"], "(1.1)");
    assert_eq!(c["condition1"]["holds"], false);
    assert_eq!(c["condition1"]["witness"]["n"], 1);
}

#[test]
fn orbit_on_sample_has_dimension_1() {
    let v = report(&["orbit", "--in", &data("g2g3d2.json")], 0);
    assert_eq!(v["result"]["dimension"], 1);
    assert_eq!(v["result"]["membership"][0]["membership"]["member"], true);
}

#[test]
fn limit_divisor_on_sample_has_degree_210() {
    let v = report(&["limit-divisor", &data("g2g3d2.json")], 0);
    assert_eq!(v["result"]["total_degree"], 210);
    assert_eq!(v["result"]["theorem4_agree"], true);
}

#[test]
fn out_file_and_determinism() {
    let dir = std::env::temp_dir().join(format!("wplimit-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let args = ["chain", "--g1", "2", "--g2", "3", "--delta", "2", "--seed", "7", "--no-timing"];
    let first = wplimit(&args);
    assert_eq!(first.status.code(), Some(0));
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    let second = wplimit(&with_out);
    assert_eq!(second.status.code(), Some(0));
    assert!(second.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), first.stdout);
}

#[test]
fn every_subcommand_runs_on_a_small_profile() {
    for cmd in ["conditions", "h0", "ramification", "limit-divisor", "smoothable", "orbit", "chain"] {
        let v = report(&[cmd, "--g1", "1", "--g2", "1", "--delta", "2", "--seed", "3"], 0);
        assert_eq!(v["command"], cmd);
        assert_eq!(v["exit_code"], 0);
    }
}

#[test]
fn selftest_passes_and_reports_injected_failures() {
    let v = report(&["selftest", "--size", "1"], 0);
    assert_eq!(v["result"]["all_passed"], true);
    let v = report(&["selftest", "--size", "0"], 0);
    assert_eq!(v["result"]["checks"].as_array().unwrap().len(), 0);
    let v = report(&["selftest", "--size", "1", "--inject-failure", "lemma1"], 4);
    assert_eq!(v["result"]["failed"], serde_json::json!(["lemma1"]));
    report(&["selftest", "--inject-failure", "nope"], 3);
}
