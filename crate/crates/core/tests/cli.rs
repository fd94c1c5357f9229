use std::process::{Command, Output};

use serde_json::Value;

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_operad-forge")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn enumerate_writes_json_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k23.json");
    let o = forge(&["enumerate", "--family", "k", "--n", "2", "--k", "3", "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["suite"], "enumerate");
    assert_eq!(v["status"], "pass");
    assert_eq!(v["data"]["count"], 48);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn config_file_sets_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# homology of a configuration space\nfamily = k\nn = 3\nk = 3\nseed = 0x2a\n").unwrap();
    let o = forge(&["homology", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["params"]["n"], 3);
    assert_eq!(v["params"]["seed"], 42);
    let o = forge(&["homology", "--config", cfg.to_str().unwrap(), "--n", "2", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["params"]["n"], 2);
    let betti: Vec<u64> = v["table"]["rows"].as_array().unwrap().iter().map(|r| r[1].as_str().unwrap().parse().unwrap()).collect();
    assert_eq!(&betti[..3], &[1, 3, 2]);
}

#[test]
fn text_report_ends_with_the_result() {
    let o = forge(&["obstruction"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("c′ = (a, a)"));
    assert!(text.contains("(informational)"));
    assert!(text.trim_end().ends_with("RESULT pass"));
}

#[test]
fn csv_output_has_a_header() {
    let o = forge(&["homology", "--family", "k", "--n", "2", "--k", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("degree,betti,torsion,expected"));
    assert_eq!(lines.next(), Some("0,1,,1"));
}

#[test]
fn errors_and_budget_overflows_exit_with_one() {
    let o = forge(&["axioms", "--family", "atomic", "--monoid", "no-such-monoid"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("operad-forge: "));
    let o = forge(&["enumerate", "--family", "k", "--k", "40", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let over = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "within budget").unwrap();
    assert_eq!(over["status"], "fail");
    assert!(over["witness"].is_string());
}

#[test]
fn reruns_with_the_same_seed_agree() {
    let run = || {
        let o = forge(&["roundtrip", "--n", "2", "--k", "3", "--samples", "200", "--seed", "7", "--format", "json"]);
        let mut v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        v.as_object_mut().unwrap().remove("timings_ms");
        v
    };
    assert_eq!(run(), run());
}
