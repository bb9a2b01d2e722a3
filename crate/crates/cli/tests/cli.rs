use std::process::{Command, Output};

use serde_json::Value;

fn yangian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yangian")).args(args).env_remove("YANGIAN_REPORT").output().expect("binary runs")
}

const SMALL: &[&str] = &["verify", "--suite", "relations", "--n", "2", "--p", "3", "--mu", "1,1", "--trunc", "4", "--budget", "2"];

#[test]
fn small_relation_run_passes_with_json_report() {
    let out = yangian(SMALL);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["suite"], "relations");
    assert_eq!(v["summary"]["fail"], 0);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] == "pass" && c["id"].is_string() && c["params"].is_object()));
    assert_eq!(checks.len() as u64, v["summary"]["pass"].as_u64().unwrap());
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "--suite", "maps", "--n", "2", "--seed", "7", "--workers", "2"];
    assert_eq!(yangian(&args).stdout, yangian(&args).stdout);
}

#[test]
fn non_admissible_shift_is_a_usage_error() {
    let out = yangian(&["verify", "--suite", "relations", "--n", "2", "--mu", "2", "--sigma", "0,1;0,0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("s[1,2] = 1"), "{err}");
}

#[test]
fn other_usage_errors() {
    for args in [
        &["verify", "--p", "4"][..],
        &["verify", "--suite", "nope"],
        &["verify", "--n", "3", "--mu", "1,1"],
        &["verify", "--sigma", "0,1;0,0"],
        &["verify", "--n", "2", "--sigma", "0,1;1"],
        &["verify", "--bogus"],
    ] {
        assert_eq!(yangian(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn config_file_env_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let from_config = dir.path().join("config.json");
    let from_env = dir.path().join("env.json");
    let from_flag = dir.path().join("flag.json");
    let cfg = dir.path().join("run.json");
    let body = serde_json::json!({"suite": "p-center", "n": 1, "p": 3, "out": from_config});
    std::fs::write(&cfg, body.to_string()).unwrap();
    let cfg = cfg.to_str().unwrap();
    let bin = env!("CARGO_BIN_EXE_yangian");

    let run = |extra: &[&str], env: Option<&std::path::Path>| {
        let mut cmd = Command::new(bin);
        cmd.args(["verify", "--config", cfg]).args(extra).env_remove("YANGIAN_REPORT");
        if let Some(e) = env {
            cmd.env("YANGIAN_REPORT", e);
        }
        cmd.output().unwrap()
    };
    assert_eq!(run(&[], None).status.code(), Some(0));
    assert!(from_config.exists());
    assert_eq!(run(&[], Some(&from_env)).status.code(), Some(0));
    assert!(from_env.exists());
    assert_eq!(run(&["--out", from_flag.to_str().unwrap()], Some(&from_env)).status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&from_flag).unwrap()).unwrap();
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    for id in ["b-vanishing", "b-rank-one", "p-center-gr", "p-center-central"] {
        assert!(ids.contains(&id), "{id}");
    }

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"suite": "gauss", "colour": 1}"#).unwrap();
    let out = yangian(&["verify", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
}

#[test]
fn sigma_from_file_and_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let sigma = dir.path().join("sigma.txt");
    std::fs::write(&sigma, "0,1\n0,0\n").unwrap();
    let out = yangian(&["verify", "--suite", "p-center", "--n", "2", "--mu", "1,1", "--sigma", sigma.to_str().unwrap(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("(E[1,2;1,1]^(2))^3"), "{text}");
    assert!(text.contains("0 failed"));
}
