use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn quiver(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("quivers").join(format!("{name}.quiver"))
}

fn taucat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taucat")).args(args).env_remove("TAUCAT_CAP").output().expect("run taucat")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn names(v: &Value) -> BTreeSet<String> {
    v.as_array().expect("array").iter().map(|s| s.as_str().expect("string").to_string()).collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

#[test]
fn verify_all_passes_on_a2() {
    let path = quiver("a2");
    let out = taucat(&["verify", "--theorem", "all", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["command"], "verify");
    assert_eq!(report["passed"], true);
    assert_eq!(report["result"]["checks"].as_array().unwrap().len(), 8);
    let bytes = std::fs::read(&path).unwrap();
    let digest: String = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(report["algebra"]["sha256"], digest);
    assert_eq!(report["algebra"]["field"], "Q");
    assert_eq!(report["algebra"]["inventory"], 3);
}

#[test]
fn check_keys_and_names_agree() {
    let path = quiver("a3");
    let p = path.to_str().unwrap();
    let by_key = taucat(&["verify", "--theorem", "3.4", p]);
    let by_name = taucat(&["verify", "--theorem", "torsion-bijection", p]);
    assert_eq!(by_key.status.code(), Some(0));
    assert_eq!(by_key.stdout, by_name.stdout);
    let report = json(&by_key);
    assert_eq!(report["result"]["checks"][0]["key"], "3.4");
    assert_eq!(report["result"]["checks"][0]["instances"], 14);
    assert_eq!(taucat(&["verify", "--theorem", "9.9", p]).status.code(), Some(2));
}

#[test]
fn check_reports_predicates() {
    let path = quiver("a2");
    let out = taucat(&["check", path.to_str().unwrap(), "--members", "P1,S1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out)["result"].clone();
    assert_eq!(names(&r["members"]), set(&["P1", "S1"]));
    assert_eq!(r["tau_rigid"], true);
    assert_eq!(r["support_tau_tilting"], true);
    assert_eq!(r["tilting"], true);

    let out = taucat(&["check", path.to_str().unwrap(), "--members", "P2;S1"]);
    let r = json(&out)["result"].clone();
    assert_eq!(r["tau_rigid"], false);
    assert_eq!(r["support_tau_tilting"], false);
}

#[test]
fn completions() {
    let path = quiver("a2");
    let p = path.to_str().unwrap();
    let out = taucat(&["complete", p, "--members", "", "--method", "fac"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out)["result"].clone();
    assert!(names(&r["output"]).is_empty());
    assert_eq!(r["witnesses_verified"], true);

    let out = taucat(&["complete", p, "--members", "P1", "--method", "tau-perp"]);
    assert_eq!(names(&json(&out)["result"]["output"]), set(&["P1", "P2"]));

    let out = taucat(&["complete", p, "--members", "S1", "--method", "fac"]);
    assert_eq!(names(&json(&out)["result"]["output"]), set(&["S1"]));

    let out = taucat(&["complete", p, "--members", "P1", "--method", "fac"]);
    assert_eq!(names(&json(&out)["result"]["output"]), set(&["S1", "P1"]));

    let out = taucat(&["complete", p, "--members", "P1", "--method", "tilting"]);
    assert_eq!(names(&json(&out)["result"]["output"]), set(&["P1", "P2"]));

    let out = taucat(&["complete", p, "--members", "P2,S1", "--method", "fac"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn enumeration_counts() {
    for (name, what, count) in [
        ("a2", "stt", 5),
        ("a3", "stt", 14),
        ("loop2", "stt", 2),
        ("a3", "tors", 14),
        ("a2", "tilting", 2),
        ("a3", "tilting", 5),
        ("a2", "tau-rigid", 6),
    ] {
        let path = quiver(name);
        let out = taucat(&["enumerate", path.to_str().unwrap(), "--what", what]);
        assert_eq!(out.status.code(), Some(0), "{name} {what}");
        let r = json(&out)["result"].clone();
        assert_eq!(r["count"], count, "{name} {what}");
        assert_eq!(r["subcategories"].as_array().unwrap().len(), count);
    }
}

#[test]
fn export_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("exchange.dot");
    let path = quiver("a2");
    let out =
        taucat(&["export", path.to_str().unwrap(), "--graph", "stt-exchange", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out)["result"].clone();
    assert_eq!(r["nodes"], 5);
    assert_eq!(r["edges"].as_array().unwrap().len(), 5);
    let dot = std::fs::read_to_string(&out_path).unwrap();
    assert!(dot.starts_with("digraph exchange {"));
    assert_eq!(dot.matches("->").count(), 5);

    let hasse = dir.path().join("tors.dot");
    let out = taucat(&["export", path.to_str().unwrap(), "--graph", "tors-hasse", "--out", hasse.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(&hasse).unwrap().starts_with("digraph tors {"));
}

#[test]
fn exit_codes() {
    let a2 = quiver("a2");
    let a2 = a2.to_str().unwrap();
    assert_eq!(taucat(&["check", a2, "--members", "X7"]).status.code(), Some(3));
    assert_eq!(taucat(&["check", a2, "--members", "2,2"]).status.code(), Some(3));

    let loop2 = quiver("loop2");
    assert_eq!(taucat(&["verify", "--theorem", "4.7", loop2.to_str().unwrap()]).status.code(), Some(4));
    let all = taucat(&["verify", loop2.to_str().unwrap()]);
    assert_eq!(all.status.code(), Some(0));
    let checks = json(&all)["result"]["checks"].clone();
    assert!(checks.as_array().unwrap().iter().any(|c| c["applicable"] == false));

    assert_eq!(taucat(&["check", a2, "--cap", "2"]).status.code(), Some(5));
    let capped =
        Command::new(env!("CARGO_BIN_EXE_taucat")).args(["check", a2]).env("TAUCAT_CAP", "2").output().unwrap();
    assert_eq!(capped.status.code(), Some(5));
    assert!(capped.stdout.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.quiver");
    std::fs::write(&bad, "vertices: 1 2\narrows: a: 1 -> 3\n").unwrap();
    assert_eq!(taucat(&["check", bad.to_str().unwrap()]).status.code(), Some(2));
    let short = dir.path().join("short.quiver");
    std::fs::write(&short, "vertices: 1\narrows: x: 1 -> 1\nrelations: x\n").unwrap();
    assert_eq!(taucat(&["check", short.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("missing.quiver");
    assert_eq!(taucat(&["check", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let path = quiver("d4");
    let args = ["verify", "--theorem", "fac-completion", path.to_str().unwrap()];
    assert_eq!(taucat(&args).stdout, taucat(&args).stdout);
}
