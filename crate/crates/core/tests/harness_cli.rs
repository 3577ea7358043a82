use std::fs;
use std::process::Command as Process;

use furstenberg_fp::harness::{parse_config, run};

const BIN: &str = env!("CARGO_BIN_EXE_furstenberg");

#[test]
fn csv_is_independent_of_thread_count() {
    let text = |jobs: usize| {
        format!(r#"{{"command":"construct","s":["1/2",1],"t":[1,"3/2",2],"n":2,"k":1,"p":[29,61],"jobs":{jobs}}}"#)
    };
    let one = run(&parse_config(&text(1)).unwrap()).unwrap().csv_bytes().unwrap();
    let many = run(&parse_config(&text(8)).unwrap()).unwrap().csv_bytes().unwrap();
    assert_eq!(one, many);
}

#[test]
fn degenerate_cases_fail_without_aborting() {
    let cfg = parse_config(r#"{"command":"construct","s":"1/2","t":"3/2","n":2,"k":1,"p":[2,29]}"#).unwrap();
    let r = run(&cfg).unwrap();
    assert_eq!(r.rows.len(), 2);
    assert!(!r.rows[0].pass);
    assert!(r.rows[0].fields.last().unwrap().contains("degenerate scale"));
    assert!(r.rows[1].pass);
    assert_eq!(r.summary().fails, 1);
}

#[test]
fn lemma_command_reports_no_counterexamples() {
    let cfg = parse_config(r#"{"command":"lemmas","lemma":"recursion_m","n":4,"k":2,"step":"1/4"}"#).unwrap();
    let r = run(&cfg).unwrap();
    assert!(r.all_passed());
    assert!(r.counterexamples.is_empty());
}

#[test]
fn binary_writes_reports_and_sets_exit_status() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ok");
    let status = Process::new(BIN)
        .args(["construct", "--out"])
        .arg(&out)
        .args(["--upper-constant", "16", "--jobs", "2"])
        .status()
        .unwrap();
    assert!(status.success());
    let csv = fs::read_to_string(out.join("construct.csv")).unwrap();
    assert!(csv.starts_with("s,t,n,k,p,branch,"));
    assert_eq!(csv.lines().count(), 4);
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["cases"], 3);
    assert_eq!(summary["passes"], 3);
    assert_eq!(summary["fails"], 0);
    assert!(summary["wall_ms"].is_u64());

    // a constant far too small fails every row
    let bad = dir.path().join("bad");
    let status = Process::new(BIN)
        .args(["construct", "--upper-constant", "1/1000", "--out"])
        .arg(&bad)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));

    // a falsified recursion produces counterexample rows
    let cfg = dir.path().join("flip.json");
    fs::write(&cfg, r#"{"lemma":"recursion_m","n":4,"k":2,"mutation":"flip"}"#).unwrap();
    let flip = dir.path().join("flip");
    let status = Process::new(BIN)
        .args(["lemmas", "--grid-step", "1/2", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&flip)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    let cx = fs::read_to_string(flip.join("counterexamples.csv")).unwrap();
    assert!(cx.starts_with("lemma,n,k,witness,lhs,rhs,deficit"));
    assert!(cx.lines().count() > 1);
}

#[test]
fn binary_rejects_bad_configs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"p":9}"#).unwrap();
    let out = Process::new(BIN).args(["exceptional", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("9 is not prime"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a", "b"] {
        let status = Process::new(BIN)
            .args(["exceptional", "--out"])
            .arg(dir.path().join(name))
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = fs::read(dir.path().join("a/exceptional.csv")).unwrap();
    let b = fs::read(dir.path().join("b/exceptional.csv")).unwrap();
    assert_eq!(a, b);
}
