use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn hamres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamres"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write_complete(path: &Path, n: usize) {
    let mut text = format!("{n} {}\n", n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            text.push_str(&format!("{u} {v}\n"));
        }
    }
    fs::write(path, text).unwrap();
}

/// Drops the trailing runtime column from every CSV row.
fn without_runtime(csv: &str) -> Vec<String> {
    csv.lines()
        .map(|l| l.rsplit_once(',').map(|(head, _)| head.to_string()).unwrap_or_default())
        .collect()
}

#[test]
fn gen_is_seeded() {
    let a = hamres(&["gen", "--n", "15", "--p", "0.3", "--seed", "9"]);
    let b = hamres(&["gen", "--n", "15", "--p", "0.3", "--seed", "9"]);
    let c = hamres(&["gen", "--n", "15", "--p", "0.3", "--seed", "10"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let first = stdout(&a).lines().next().unwrap().to_string();
    assert!(first.starts_with("15 "));
}

#[test]
fn complete_graph_resilience_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k7.txt");
    write_complete(&path, 7);
    let v = json(&hamres(&["resilience", path.to_str().unwrap()]));
    assert_eq!(v["value"], 5);
    assert_eq!(v["witness"].as_array().unwrap().len(), 5);
    let v = json(&hamres(&["pm-resilience", path.to_str().unwrap()]));
    // odd n: no perfect matching at all
    assert_eq!(v["value"], 0);
}

#[test]
fn cycle_pm_resilience_from_stdin_format_csv() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hamres"))
        .args(["pm-resilience", "-", "--format", "csv"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("n,m,min_degree,property,value"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..5], &["6", "6", "2", "perfect_matching", "2"]);
}

#[test]
fn analyze_reports_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k5.txt");
    write_complete(&path, 5);
    let v = json(&hamres(&["analyze", path.to_str().unwrap()]));
    assert_eq!(v["hamiltonian"], true);
    assert_eq!(v["independence_number"], 1);
    assert_eq!(v["vertex_connectivity"], 4);
    assert_eq!(v["chvatal_erdos"], true);
    assert_eq!(v["longest_path"], 4);
}

#[test]
fn census_csv_is_reproducible_with_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let o = hamres(&[
            "census", "--kind", "resilience_census", "--n", "9", "--p", "0.5", "--trials", "8", "--seed", "4",
            "--out", out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let ta = fs::read_to_string(&a).unwrap();
    let tb = fs::read_to_string(&b).unwrap();
    assert!(ta.starts_with("trial,seed,n,p,"));
    assert!(ta.lines().next().unwrap().ends_with(",runtime_ms"));
    assert_eq!(ta.lines().count(), 9);
    assert_eq!(without_runtime(&ta), without_runtime(&tb));

    let meta: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("a.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["config"]["trials"], 8);
    assert!(meta["version"].is_string());
    assert_eq!(meta["summary"][0]["trials"], 8);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "kind = property_census\nn = 20\np = 0.5\ntrials = 50\nproperties = P1,Q1\n").unwrap();
    let o = hamres(&["census", "--config", cfg.to_str().unwrap(), "--trials", "3", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["records"].as_array().unwrap().len(), 6);
    assert_eq!(v["config"]["trials"], 3);
}

#[test]
fn threshold_rule_and_bounds() {
    let o = hamres(&["properties", "--n", "30", "--p-rule", "threshold+2", "--trials", "2", "--properties", "P1,P2,P3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 7);

    let o = hamres(&["bounds", "--bounds-n-max", "6", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["summary"]["violations"], 0);
}

#[test]
fn pipeline_trace_rows() {
    let o = hamres(&["pipeline", "--n", "10", "--p", "0.7", "--trials", "2", "--d0", "6"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().contains("path_trace"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(hamres(&["census", "--trials", "0"]).status.code(), Some(1));
    assert_eq!(hamres(&["census", "--p-rule", "threshold*3"]).status.code(), Some(1));
    assert_eq!(hamres(&["gen", "--n", "5", "--p", "1.5"]).status.code(), Some(1));
    assert_eq!(hamres(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        hamres(&["resilience", "--n", "9", "--p", "1", "--budget-oracle", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(hamres(&["resilience", "--n", "40", "--p", "0.5"]).status.code(), Some(2));
    assert_eq!(hamres(&["analyze", "/nonexistent/graph.txt"]).status.code(), Some(3));
    assert_eq!(
        hamres(&["bounds", "--bounds-n-max", "2", "--out", "/nonexistent/dir/out.csv"]).status.code(),
        Some(3)
    );
    assert_eq!(hamres(&["--help"]).status.code(), Some(0));
}
