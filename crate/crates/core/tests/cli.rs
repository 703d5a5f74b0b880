use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn maxqap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxqap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn json_report(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("one JSON record")
}

fn without_timings(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timings");
    v
}

#[test]
fn solve_fixture_with_exact() {
    let out = maxqap(&["solve", "--instance", &fixture("four.json"), "--exact", "--json"]);
    let r = json_report(&out);
    // OPT of the fixture enumerated by hand over all 24 permutations.
    assert_eq!(r["exact"]["opt_value"], 66.0);
    assert!(r["lp"][0]["value"].as_f64().unwrap() >= 66.0 - 1e-6);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn same_seed_same_report() {
    let args = ["solve", "--generate", "5:uniform01:4", "--rounds", "4", "--seed", "1", "--json"];
    let a = json_report(&maxqap(&args));
    let b = json_report(&maxqap(&args));
    assert_eq!(without_timings(a), without_timings(b));
}

#[test]
fn best_of_many_dominates_one() {
    let run = |k: &str| {
        json_report(&maxqap(&[
            "solve", "--generate", "6:int3:2", "--round", "randomized", "--rounds", k, "--seed", "7", "--json",
        ]))["randomized"]["value"]
            .as_f64()
            .unwrap()
    };
    assert!(run("32") >= run("1"));
}

#[test]
fn table_output_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("run");
    let lp = dir.path().join("relax.lp");
    let out = maxqap(&[
        "solve",
        "--generate",
        "3:sparse0.5:1",
        "--out",
        out_dir.to_str().unwrap(),
        "--lp-out",
        lp.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("derandomized"));
    assert!(std::fs::read_to_string(out_dir.join("summary.txt")).unwrap().contains("LP*"));
    let line = std::fs::read_to_string(out_dir.join("report.jsonl")).unwrap();
    assert_eq!(line.lines().count(), 1);
    serde_json::from_str::<Value>(line.trim()).unwrap();
    let text = std::fs::read_to_string(lp).unwrap();
    assert!(text.contains("Maximize") && text.contains("Subject To") && text.trim_end().ends_with("End"));
}

#[test]
fn bad_inputs_exit_nonzero() {
    let out = maxqap(&["solve", "--generate", "4:gauss:1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("gauss"));
    let out = maxqap(&["solve", "--instance", "/nonexistent/file.dat"]);
    assert!(!out.status.success());
}

#[test]
fn exact_guard_refuses_before_solving() {
    // 11! = 39916800 maps exceeds the 10⁷ enumeration limit.
    let out = maxqap(&["solve", "--generate", "11:int1:0", "--exact"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("39916800"));
}

#[test]
fn reduce_then_solve_reaches_every_edge() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = maxqap(&["reduce", "--labelcover", &fixture("lc_edge.json"), "-N", "2", "--alpha", "1", "--out", d]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let sidecar: Value = serde_json::from_slice(&std::fs::read(dir.path().join("reduced.sidecar.json")).unwrap()).unwrap();
    assert_eq!(sidecar["N"], 2);
    let edges: u64 = sidecar["edge_set_sizes"].as_array().unwrap().iter().map(|e| e["size"].as_u64().unwrap()).sum();
    assert_eq!(edges, 4);
    let reduced = dir.path().join("reduced.json");
    let r = json_report(&maxqap(&["solve", "--instance", reduced.to_str().unwrap(), "--exact", "--round", "derandomized", "--json"]));
    assert_eq!(r["exact"]["opt_value"].as_f64().unwrap(), edges as f64);
}

#[test]
fn reduce_replays_byte_for_byte() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let out = maxqap(&[
            "reduce", "--labelcover", &fixture("lc_path.json"), "-N", "3", "--alpha", "0.5", "--seed", "5",
            "--out", d.path().to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    for f in ["reduced.json", "reduced.sidecar.json"] {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap());
    }
}

#[test]
fn reduce_refuses_beyond_the_memory_budget() {
    let dir = tempfile::tempdir().unwrap();
    let out = maxqap(&["reduce", "--labelcover", &fixture("lc_path.json"), "--out", dir.path().to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    // Default N = 3⁴·2·2⁵ = 5184.
    assert!(err.contains("N = 5184"), "{err}");
    assert!(!dir.path().join("reduced.json").exists());

    let out = Command::new(env!("CARGO_BIN_EXE_maxqap"))
        .args(["reduce", "--labelcover", &fixture("lc_path.json"), "-N", "4", "--out", dir.path().to_str().unwrap()])
        .env("MAXQAP_MEMORY_BUDGET", "100")
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget is 100"));
}

#[test]
fn suite_refuses_oversized_sizes() {
    let out = maxqap(&["suite", "--sizes", "3,40"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("offending: 40"));
}

#[test]
fn small_suite_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = maxqap(&["suite", "--sizes", "3,4", "--count", "3", "--json", "--out", dir.path().to_str().unwrap()]);
    let v = json_report(&out);
    assert_eq!(v["passed"], true);
    let outcomes = v["outcomes"].as_array().unwrap();
    assert_eq!(outcomes.len(), 10);
    for (i, o) in outcomes.iter().enumerate() {
        assert_eq!(o["id"].as_u64().unwrap(), i as u64 + 1);
        assert!(o["name"].is_string() && o["summary"].is_string() && o["metrics"].is_object());
    }
    assert_eq!(v["config"]["sizes"], serde_json::json!([3, 4]));
    let lines = std::fs::read_to_string(dir.path().join("suite.jsonl")).unwrap();
    assert_eq!(lines.lines().count(), 10);
}
