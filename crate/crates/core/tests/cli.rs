mod common;

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use bugsift::sifter::read_results;
use bugsift::RunManifest;
use common::fixture;

fn bugsift(args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bugsift"));
    for (k, _) in std::env::vars().filter(|(k, _)| k.starts_with("BUGSIFT_")) {
        cmd.env_remove(k);
    }
    cmd.args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn index_toy(out: &Path) -> Output {
    bugsift(&["index", s(&fixture("toy/src")), "--out", s(out)])
}

#[test]
fn index_reports_counts_and_hash() {
    let dir = tempfile::tempdir().unwrap();
    let o = index_toy(dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("3 methods indexed"), "{text}");
    assert!(text.contains("vocabulary:"));
    assert!(text.contains("average method length"));
    assert!(dir.path().join("index.json").is_file());

    // rebuild from the written corpus file: same hash
    let again = bugsift(&[
        "index",
        s(&dir.path().join("corpus.jsonl")),
        "--out",
        s(&dir.path().join("b")),
    ]);
    let hash = |t: &str| {
        t.lines()
            .find(|l| l.starts_with("corpus hash"))
            .unwrap()
            .to_string()
    };
    assert_eq!(hash(&text), hash(&stdout(&again)));
}

#[test]
fn missing_source_exits_two_naming_path() {
    let o = bugsift(&["index", "/no/such/tree", "--out", "/tmp/unused-bugsift"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/no/such/tree"));
}

#[test]
fn usage_error_exits_two() {
    assert_eq!(bugsift(&["locate"]).status.code(), Some(2));
    assert_eq!(bugsift(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bugsift(&["--help"]).status.code(), Some(0));
}

#[test]
fn locate_writes_results_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    index_toy(dir.path());
    let out = dir.path().join("run");
    let o = bugsift(&[
        "locate",
        "--index",
        s(dir.path()),
        "--bugs",
        s(&fixture("toy/bugs.jsonl")),
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let results = read_results(&out.join("results.tsv")).unwrap();
    assert!(!results.is_empty());
    for list in results.values() {
        assert!(list.entries.iter().all(|e| e.local_score > 0.0));
    }
    let m = RunManifest::read(&out.join("manifest.json")).unwrap();
    assert_eq!(m.config, bugsift::preset("boostnsift").unwrap());
    assert_eq!(m.bug_file, fixture("toy/bugs.jsonl"));
    let t = m.timings;
    assert!(t.phase_sum_ms() <= t.total_ms * 1.0001);
    assert!(t.phase_sum_ms() >= t.total_ms * 0.9, "{t:?}");
}

#[test]
fn bns_qb_lists_are_supersets() {
    let dir = tempfile::tempdir().unwrap();
    index_toy(dir.path());
    let run = |preset: &str| {
        let out = dir.path().join(preset);
        let o = bugsift(&[
            "locate",
            "--index",
            s(dir.path()),
            "--bugs",
            s(&fixture("toy/bugs.jsonl")),
            "--preset",
            preset,
            "--out",
            s(&out),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        read_results(&out.join("results.tsv")).unwrap()
    };
    let sifted = run("boostnsift");
    let plain = run("bns_qb");
    for (bug, list) in &sifted {
        let a: BTreeSet<&str> = list.method_ids().collect();
        let b: BTreeSet<&str> = plain[bug].method_ids().collect();
        assert!(a.is_subset(&b));
    }
}

#[test]
fn unknown_preset_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    index_toy(dir.path());
    let o = bugsift(&[
        "locate",
        "--index",
        s(dir.path()),
        "--bugs",
        s(&fixture("toy/bugs.jsonl")),
        "--preset",
        "nope",
        "--out",
        s(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nope"));
}

#[test]
fn env_and_config_file_overrides() {
    let dir = tempfile::tempdir().unwrap();
    index_toy(dir.path());
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "preset = \"bns_qb\"\nalpha = 2.0\n").unwrap();
    let out = dir.path().join("cfg");
    let o = Command::new(env!("CARGO_BIN_EXE_bugsift"))
        .args([
            "locate",
            "--index",
            s(dir.path()),
            "--bugs",
            s(&fixture("toy/bugs.jsonl")),
            "--out",
            s(&out),
            "--config",
            s(&cfg),
        ])
        .env("BUGSIFT_K", "0.5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let m = RunManifest::read(&out.join("manifest.json")).unwrap();
    assert_eq!(m.config.boost_weights.alpha, 2.0);
    assert_eq!(m.config.bm25.k, 0.5);
    assert_eq!(m.config.sift_mode, bugsift::SiftMode::Off);
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn evaluate_perfect_empty_and_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let gold = write(
        dir.path(),
        "gold.jsonl",
        "{\"bug_id\":\"1\",\"methods\":[\"a\"]}\n{\"bug_id\":\"2\",\"methods\":[\"b\"]}\n",
    );

    let perfect = write(
        dir.path(),
        "perfect.tsv",
        "1\t1\ta\t2\t2\n1\t2\tx\t1\t1\n2\t1\tb\t3\t3\n",
    );
    let o = bugsift(&["evaluate", "--results", s(&perfect), "--gold", s(&gold)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let row: Vec<String> = stdout(&o)
        .lines()
        .nth(1)
        .unwrap()
        .split_whitespace()
        .map(String::from)
        .collect();
    assert_eq!(row[1..], ["1.000", "1.000", "2", "2", "2", "2"]);
    assert!(dir.path().join("report.json").is_file());

    let empty = write(dir.path(), "empty.tsv", "");
    let o = bugsift(&["evaluate", "--results", s(&empty), "--gold", s(&gold)]);
    assert_eq!(o.status.code(), Some(1));

    let stray = write(dir.path(), "stray.tsv", "1\t1\ta\t2\t2\nZZ\t1\ta\t1\t1\n");
    let o = bugsift(&["evaluate", "--results", s(&stray), "--gold", s(&gold)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ZZ"));
}

#[test]
fn sweep_degenerate_and_missing_gold() {
    let dir = tempfile::tempdir().unwrap();
    index_toy(dir.path());
    let bugs = fixture("toy/bugs.jsonl");
    let gold = fixture("toy/gold.jsonl");
    let out = dir.path().join("sw");
    let o = bugsift(&[
        "sweep",
        "--index",
        s(dir.path()),
        "--bugs",
        s(&bugs),
        "--gold",
        s(&gold),
        "--lo",
        "1.0",
        "--hi",
        "1.0",
        "--step",
        "0.1",
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let table = fs::read_to_string(out.join("sweep.tsv")).unwrap();
    assert_eq!(table.lines().count(), 2);
    assert!(table.lines().nth(1).unwrap().starts_with("1\t1\t1\t"));

    let o = bugsift(&[
        "sweep",
        "--index",
        s(dir.path()),
        "--bugs",
        s(&bugs),
        "--gold",
        "/no/gold.jsonl",
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for run in ["a", "b"] {
        let idx = dir.path().join(run);
        index_toy(&idx);
        let out = idx.join("run");
        bugsift(&[
            "locate",
            "--index",
            s(&idx),
            "--bugs",
            s(&fixture("toy/bugs.jsonl")),
            "--preset",
            "bns_qb",
            "--out",
            s(&out),
        ]);
        outputs.push((
            fs::read(out.join("results.tsv")).unwrap(),
            fs::read(idx.join("corpus.jsonl")).unwrap(),
        ));
    }
    assert_eq!(outputs[0], outputs[1]);
}
