use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cobweb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobweb")).args(args).env_remove("COBWEB_SEED").output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

fn spec_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cobweb-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn two_point() -> PathBuf {
    spec_file("two.json", r#"{"points":["p","q"],"dist":[["p","q","1/2"],["q","p","1/2"]]}"#)
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

#[test]
fn validate_exit_codes() {
    let ok = cobweb(&["validate", "--spec", two_point().to_str().unwrap(), "--json"]);
    assert_eq!(ok.status.code(), Some(0));
    let r = report(&ok);
    assert_eq!(r["result"]["flags"]["metric"], true);
    assert_eq!(r["result"]["provenance"], "exhaustive");

    let bad = spec_file("bad.json", r#"{"points":["p","q"],"dist":[["p","p","1"],["p","q","1/2"],["q","p","1/2"]]}"#);
    let out = cobweb(&["validate", "--spec", bad.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["verdicts"][0]["pass"], false);
    assert_eq!(r["verdicts"][0]["witness"]["point"], "p");

    let missing = spec_file("missing.json", r#"{"points":["p","q"],"dist":[["p","q","1/2"]]}"#);
    let out = cobweb(&["validate", "--spec", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}

#[test]
fn validate_builtins_are_sampled() {
    let out = cobweb(&["validate", "--spec", "arens", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(report(&out)["result"]["provenance"]["sampled"].as_u64().unwrap() > 0);
    let out = cobweb(&["validate", "--spec", "cantor:4", "--json"]);
    assert_eq!(report(&out)["result"]["flags"]["ultrametric"], true);
}

#[test]
fn distances() {
    let spec = two_point();
    let spec = spec.to_str().unwrap();
    let out = cobweb(&["dist", "--spec", spec, "--construction", "gamma", "v:p", "v:q"]);
    assert_eq!(stdout(&out), "1");
    let out = cobweb(&["dist", "--spec", spec, "--construction", "omega", "e:p,q,1/4", "e:p,q,1/2"]);
    assert_eq!(stdout(&out), "1/2");
    let out = cobweb(&["dist", "--spec", spec, "--construction", "tower:1", r#"{"e":["p","q","1/4"]}"#, "v:p"]);
    assert_eq!(stdout(&out), "1/4");
    let out = cobweb(&["dist", "--spec", spec, "--construction", "cobweb", "v:p", "e:p,q,3/4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a member"));
}

#[test]
fn eres_distance_reports_resolutions() {
    let out = cobweb(&[
        "dist",
        "--spec",
        "arens",
        "--construction",
        "eres",
        r#"{"v":"spine@0"}"#,
        r#"{"v":"spine@1/2"}"#,
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["distance"], "1");
    assert_eq!(r["result"]["resolution"][0], "(0,0)");
}

#[test]
fn verify_is_deterministic_and_sorted() {
    let a = cobweb(&["verify", "--suite", "s5", "--seed", "9", "--json"]);
    let b = cobweb(&["verify", "--suite", "s5", "--seed", "9", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    let (ra, rb) = (report(&a), report(&b));
    assert_eq!(ra["report_digest"], rb["report_digest"]);
    assert_eq!(ra["seed"], 9);
    let ids: Vec<&str> = ra["verdicts"].as_array().unwrap().iter().map(|v| v["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_cobweb"))
        .args(["verify", "--suite", "s5", "--sample", "5", "--json"])
        .env("COBWEB_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(report(&out)["seed"], 42);
}

#[test]
fn unknown_suite_is_an_input_error() {
    assert_eq!(cobweb(&["verify", "--suite", "s99"]).status.code(), Some(2));
}

#[test]
fn censuses() {
    let out = cobweb(&["census", "cantor:8", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["values"].as_array().unwrap().len(), 9);

    let out = cobweb(&["census", "eres:arens", "--sample", "50", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r["verdicts"].as_array().unwrap().iter().all(|v| v["pass"] == true));

    let out = cobweb(&["census", "eres:arens", "--sample", "1", "--json"]);
    assert_eq!(report(&out)["result"]["values"], serde_json::json!(["0"]));

    assert_eq!(cobweb(&["census", "cantor:20"]).status.code(), Some(2));
}
