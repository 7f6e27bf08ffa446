use std::process::{Command, Output};

use cfk_core::pretzel::InvariantReport;

fn cfk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfk")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn invariants_json_round_trips() {
    let o = cfk(&["invariants", "-m", "5", "-n", "5", "--mirror", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let r = InvariantReport::from_json(&text).unwrap();
    assert_eq!((r.computed.v0, r.computed.lower, r.computed.upper), (2, 3, 2));
    assert!(r.checks.theorem_match);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["V0_lower"], 3);
    assert_eq!(v["checks"]["theorem_match"], true);
    assert_eq!(serde_json::from_str::<serde_json::Value>(&r.to_json()).unwrap(), v);
}

#[test]
fn invariants_table_says_match() {
    let o = cfk(&["invariants", "-m", "7", "-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("MATCH"));
}

#[test]
fn bad_parameters_are_usage_errors() {
    for args in [
        &["invariants", "-m", "3", "-n", "5"][..],
        &["invariants", "-m", "4", "-n", "3"],
        &["invariants", "-m", "5"],
        &["verify", "--m-max", "8"],
        &["verify", "--m-max", "9", "--n-max", "11"],
        &["show", "-m", "5", "-n", "3", "--which", "everything"],
        &["examples", "unknot-ish"],
        &["examples", "lspace"],
        &["examples", "lspace", "2", "1"],
        &["examples", "trefoil", "3"],
        &["invariants", "-m", "5", "-n", "3", "--format", "dot"],
        &["frobnicate"],
    ] {
        let o = cfk(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn help_exits_cleanly() {
    assert_eq!(cfk(&["--help"]).status.code(), Some(0));
}

#[test]
fn small_sweeps() {
    let o = cfk(&["verify", "--m-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2 cases, 2 passed, 0 failed"));

    let o = cfk(&["verify", "--m-max", "9", "--jobs", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 20);
    let order: Vec<(i64, i64)> = reports.iter().map(|r| (r["m"].as_i64().unwrap(), r["n"].as_i64().unwrap())).collect();
    let mut sorted = order.clone();
    sorted.sort();
    assert_eq!(order, sorted);
}

#[test]
fn worked_examples() {
    let last = |args: &[&str]| stdout(&cfk(args)).trim_end().lines().last().unwrap().to_string();
    assert_eq!(last(&["examples", "trefoil"]), "V0 = 1, V0_lower = 1, V0_upper = 1");
    assert_eq!(last(&["examples", "left-trefoil"]), "V0 = 0, V0_lower = 0, V0_upper = -1");
    assert_eq!(last(&["examples", "figure-eight"]), "V0 = 0, V0_lower = 1, V0_upper = 0");
    assert_eq!(last(&["examples", "lspace", "1"]), "V0 = 1, V0_lower = 1, V0_upper = 1");
}

#[test]
fn box_grid_for_nine_nine() {
    let o = cfk(&["show", "-m", "9", "-n", "9", "--which", "full", "--format", "ascii"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let counts: Vec<char> = text
        .split_whitespace()
        .filter_map(|cell| cell.strip_prefix('o').and_then(|d| d.chars().next()))
        .collect();
    assert_eq!(counts, vec!['1', '2', '3', '2', '1']);
}

#[test]
fn renderers() {
    let dot = stdout(&cfk(&["show", "-m", "5", "-n", "3", "--which", "model", "--format", "dot"]));
    assert!(dot.starts_with("digraph") && dot.contains("style=dashed"));
    let json = stdout(&cfk(&["show", "-m", "5", "-n", "3", "--which", "full", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let c = cfk_core::complex::FilteredComplex::from_json(&v["complex"].to_string()).unwrap();
    assert_eq!(c.len(), 4 + 3);
    for which in ["A0", "cone"] {
        let o = cfk(&["show", "-m", "7", "-n", "5", "--which", which, "--format", "ascii"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("H = F[U]"));
    }
}

#[test]
fn hfk_table() {
    let o = cfk(&["hfk", "-m", "7", "-n", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["matches_expected"], true);
    let total: u64 = v["entries"].as_array().unwrap().iter().map(|e| e["rank"].as_u64().unwrap()).sum();
    assert_eq!(total, 4 + 5 * 3);
}

#[test]
fn writes_to_a_file() {
    let path = std::env::temp_dir().join(format!("cfk-out-{}.json", std::process::id()));
    let o = cfk(&["invariants", "-m", "3", "-n", "3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = InvariantReport::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((r.m, r.n), (3, 3));
    let _ = std::fs::remove_file(path);
}
