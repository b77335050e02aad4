use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn dynrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynrank"))
        .args(args)
        .env_remove("DYNRANK_THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn stats_counts_self_loops() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "path.txt", "0 1\n1 2\n");
    let o = dynrank(&["stats", "--graph", &g]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "|V|=3 |E|=5 Davg=1.67");
}

#[test]
fn stats_on_empty_file_warns() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "empty.txt", "");
    let o = dynrank(&["stats", "--graph", &g]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("|V|=0 "));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn stats_expands_symmetric_matrix_market() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "s.mtx",
        "%%MatrixMarket matrix coordinate pattern symmetric\n3 3 2\n2 1\n3 2\n",
    );
    let o = dynrank(&["stats", "--graph", &g, "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["n"], 3);
    assert_eq!(v["m"], 7);
}

#[test]
fn io_and_parse_errors_exit_1() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.txt");
    assert_eq!(
        dynrank(&["stats", "--graph", missing.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    let garbage = write(&dir, "bad.txt", "0 x\n");
    assert_eq!(
        dynrank(&["stats", "--graph", &garbage]).status.code(),
        Some(1)
    );
}

#[test]
fn unknown_flags_are_rejected() {
    let o = dynrank(&["run", "--graph", "random:10:20", "--frobnicate"]);
    assert!(!o.status.success());
    assert!(o.stdout.is_empty());
}

#[test]
fn static_on_one_vertex_gives_unit_rank() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "one.txt", "0 0\n");
    let v = json(&dynrank(&["run", "--approach", "static", "--graph", &g]));
    assert_eq!(v["ranks"], serde_json::json!([1.0]));
}

#[test]
fn frontier_with_empty_batch_does_no_work() {
    let v = json(&dynrank(&[
        "run",
        "--approach",
        "frontier",
        "--fraction",
        "0",
        "--graph",
        "random:200:800:3",
    ]));
    assert_eq!(v["rank_updates"], 0);
    assert_eq!(v["converged"], true);
}

#[test]
fn repeated_runs_match_except_timing() {
    let args = [
        "run",
        "--approach",
        "frontier",
        "--fraction",
        "1e-2",
        "--seed",
        "7",
        "--threads",
        "1",
        "--graph",
        "random:500:3000:2",
    ];
    let mut a = json(&dynrank(&args));
    let mut b = json(&dynrank(&args));
    for v in [&mut a, &mut b] {
        v["elapsed_s"] = Value::Null;
        v["preprocess_s"] = Value::Null;
    }
    assert_eq!(a, b);
}

#[test]
fn contract_violations_exit_2() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "path.txt", "0 1\n1 2\n");
    let batch = write(&dir, "b.txt", "- 0 2\n");
    assert_eq!(
        dynrank(&["run", "--graph", &g, "--batch", &batch])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        dynrank(&["run", "--graph", &g, "--batch", &batch, "--strict"])
            .status
            .code(),
        Some(2)
    );
    assert!(
        dynrank(&["run", "--graph", &g, "--batch", &batch, "--lenient"])
            .status
            .success()
    );
    assert_eq!(
        dynrank(&["run", "--graph", &g, "--alpha", "1.5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn non_convergence_still_exits_0() {
    let v = json(&dynrank(&[
        "run",
        "--approach",
        "static",
        "--max-iters",
        "2",
        "--graph",
        "random:100:400:1",
    ]));
    assert_eq!(v["converged"], false);
    assert_eq!(v["iterations"], 2);
}

#[test]
fn generated_batch_feeds_run() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("b.txt");
    let o = dynrank(&[
        "gen-batch",
        "--graph",
        "random:300:1500:4",
        "--fraction",
        "1e-2",
        "--insert-ratio",
        "0.8",
        "--seed",
        "5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    // 1500 edges plus 300 self-loops
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with('+')).count(), 14);
    assert_eq!(text.lines().filter(|l| l.starts_with('-')).count(), 4);

    let from_file = json(&dynrank(&[
        "run",
        "--graph",
        "random:300:1500:4",
        "--batch",
        out.to_str().unwrap(),
        "--threads",
        "1",
    ]));
    let drawn = json(&dynrank(&[
        "run",
        "--graph",
        "random:300:1500:4",
        "--fraction",
        "1e-2",
        "--insert-ratio",
        "0.8",
        "--seed",
        "5",
        "--threads",
        "1",
    ]));
    assert_eq!(from_file["ranks"], drawn["ranks"]);
}

fn without_timing(csv: &str) -> Vec<String> {
    csv.lines()
        .map(|l| {
            let mut f: Vec<&str> = l.split(',').collect();
            f[8] = "";
            f[9] = "";
            f.join(",")
        })
        .collect()
}

#[test]
fn bench_csv_is_stable_and_summarized() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = dynrank(&[
            "bench",
            "--graph",
            "random:300:1500:1",
            "--graph",
            "random:400:2000:2",
            "--fractions",
            "1e-3,1e-2",
            "--reps",
            "2",
            "--mode",
            "sync,async",
            "--threads",
            "1",
            "--summary",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        // one log line per run on the error stream
        assert_eq!(
            String::from_utf8_lossy(&o.stderr).lines().count(),
            2 * 2 * 2 * 2 * 4
        );
        fs::read_to_string(out).unwrap()
    };
    let a = run("a.csv");
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines[0].split(',').nth(14), Some("l1_error"));
    let (rows, summary): (Vec<&str>, Vec<&str>) =
        lines[1..].iter().partition(|l| !l.starts_with("geomean,"));
    assert_eq!(rows.len(), 2 * 2 * 2 * 2 * 4);
    assert_eq!(summary.len(), 2 * 2 * 4);
    assert_eq!(without_timing(&a), without_timing(&run("b.csv")));
}

#[test]
fn bench_json_carries_metadata() {
    let o = dynrank(&[
        "bench",
        "--graph",
        "random:200:800:1",
        "--reps",
        "1",
        "--threads",
        "1",
        "--format",
        "json",
        "--summary",
    ]);
    let v = json(&o);
    assert!(v["metadata"]["rng"].as_str().unwrap().contains("ChaCha8"));
    assert_eq!(v["metadata"]["frontier_tolerance"], 1e-15);
    assert_eq!(v["records"].as_array().unwrap().len(), 4);
    assert_eq!(v["summary"].as_array().unwrap().len(), 4);
}

#[test]
fn bench_reports_failed_cells() {
    let missing = Path::new("/nonexistent/graph.txt").to_str().unwrap();
    let o = dynrank(&["bench", "--graph", missing, "--reps", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o).lines().filter(|l| l.ends_with(",error")).count(),
        4
    );
}

#[test]
fn thread_count_comes_from_env_unless_flag_given() {
    let run = |extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_dynrank"));
        cmd.args(["run", "--graph", "random:50:100"])
            .args(extra)
            .env("DYNRANK_THREADS", "3");
        let v: Value = serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap();
        v["threads"].as_u64().unwrap()
    };
    assert_eq!(run(&[]), 3);
    assert_eq!(run(&["--threads", "2"]), 2);
}

#[test]
fn scale_reports_speedup_per_thread_count() {
    let o = dynrank(&[
        "scale",
        "--graph",
        "random:1000:5000:1",
        "--threads",
        "1,2",
        "--reps",
        "1",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "mode,threads,elapsed_s,speedup");
    assert!(lines[1].starts_with("async,1,") && lines[1].ends_with(",1"));
    assert!(lines[2].starts_with("async,2,"));
}
