use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn uecrit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uecrit"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

fn with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_uecrit"))
        .args(args)
        .current_dir(root())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn check_fan5_is_in_ue() {
    let out = uecrit(&["check", "fixtures/fan5.el"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["in_UE"], true);
    assert_eq!(v["canonical_graph6"], "DL{");
}

#[test]
fn check_octahedron_is_unique_but_not_critical() {
    let out = uecrit(&["check", "fixtures/oct.el"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["uniquely_3"], true);
    assert_eq!(v["in_UE"], false);
}

#[test]
fn bound_on_k5_is_a_usage_error() {
    let out = uecrit(&["bound", "fixtures/k5.el"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not planar"));
}

#[test]
fn bound_reports_fan6_ledger() {
    let v = json(&uecrit(&["bound", "fan6"]));
    assert_eq!(v["q"], 3);
    assert_eq!(v["thm46_margin"], 0);
    assert_eq!(v["formula2_slack"], 2);
}

#[test]
fn fixture_names_and_stdin_agree() {
    let by_name = json(&uecrit(&["check", "diamond"]));
    let text = std::fs::read_to_string(root().join("fixtures/diamond.el")).unwrap();
    let by_stdin = json(&with_stdin(&["check", "-"], &text));
    assert_eq!(by_name, by_stdin);
    let g6 = by_name["canonical_graph6"].as_str().unwrap().to_string();
    let by_g6 = json(&with_stdin(&["check", "-", "--format", "graph6"], &g6));
    assert_eq!(by_g6["canonical_graph6"], by_name["canonical_graph6"]);
    assert_eq!(by_g6["in_UE"], true);
}

#[test]
fn bad_input_reports_position() {
    let out = with_stdin(&["check", "-", "--format", "edgelist"], "n 3\n0 1\n1 1\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = uecrit(&["check", "no-such-graph"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn strict_audit_refuses_separating_triangles() {
    let out = uecrit(&["audit", "fan6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("separating"));
    let out = uecrit(&["audit", "oct"]);
    assert_eq!(out.status.code(), Some(2));

    let v = json(&uecrit(&["audit", "--member", "fan6"]));
    assert_eq!(v["binding_failures"], Value::Array(vec![]));
    let v = json(&uecrit(&["audit", "--relaxed", "oct"]));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["binding"] == false));
}

#[test]
fn audit_diamond_passes() {
    let out = uecrit(&["audit", "diamond"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["digest"].as_str().unwrap().starts_with("ok/"));
    let checked = json(&uecrit(&["check", "fixtures/diamond.el"]));
    assert_eq!(v["canonical_graph6"], checked["canonical_graph6"]);
}

#[test]
fn decompose_reports_components_and_aux_edges() {
    let v = json(&uecrit(&["decompose", "diamondring"]));
    assert_eq!(v["decomposition"]["k"], 3);
    let edges = v["aux_graph"]["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 3);
    assert!(edges.iter().all(|e| e["provenance"] == "step1"));
    assert_eq!(v["audit_mode"], "relaxed");
}

#[test]
fn text_output_carries_the_same_leaves() {
    let json_out = json(&uecrit(&["check", "w4"]));
    let text = String::from_utf8(uecrit(&["check", "w4", "--output", "text"]).stdout).unwrap();
    for key in ["canonical_graph6", "in_UE", "uniquely_3", "planar"] {
        let line = format!("{key}: {}", json_out[key]);
        assert!(text.lines().any(|l| l == line), "missing {line:?} in\n{text}");
    }
}

#[test]
fn search_size_six_and_shards() {
    let v = json(&uecrit(&["search", "--n", "6"]));
    assert_eq!(v["run"]["row"]["size"], 9);
    assert_eq!(v["bounds"]["holds"], true);
    let shard = json(&uecrit(&["search", "--n", "6", "--shard", "d3:1/4", "--jobs", "2"]));
    assert_eq!(shard["run"]["shard"]["total"], 4);
    assert!(shard.get("bounds").is_none());
}

#[test]
fn search_cache_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("runs.tsv");
    let cache = cache.to_str().unwrap();
    let first = json(&uecrit(&["search", "--n", "5", "--cache", cache]));
    let second = json(&uecrit(&["search", "--n", "5", "--cache", cache]));
    assert_eq!(first["resumed"], false);
    assert_eq!(second["resumed"], true);
    assert_eq!(first["run"]["row"], second["run"]["row"]);
}

#[test]
fn hunt_finds_fan_class_and_refuses_impossible_targets() {
    let v = json(&uecrit(&[
        "search", "--n", "6", "--edges", "9", "--strategy", "carving", "--max-hits", "1",
    ]));
    assert_eq!(v["mode"], "hunt");
    assert_eq!(v["records"].as_array().unwrap().len(), 1);
    let out = uecrit(&["search", "--n", "10", "--edges", "20"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn size_table_text_is_aligned() {
    let out = uecrit(&["size-table", "--min-n", "3", "--max-n", "5", "--output", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.contains("2n-3") && header.contains("5n/2-6"));
    assert!(text.contains("check.holds: true"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["search", "--n", "6", "--shard", "5/4"][..],
        &["size-table", "--min-n", "7", "--max-n", "6"],
        &["search", "--n", "6", "--budget-seconds", "-1"],
        &["check"],
        &["frobnicate"],
    ] {
        assert_eq!(uecrit(args).status.code(), Some(2), "{args:?}");
    }
}
