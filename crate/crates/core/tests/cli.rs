use std::path::Path;
use std::process::Command;

use dqaa::cli::{self, RunConfig};

fn dqaa() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dqaa"))
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn preset_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig4");
    let status = dqaa()
        .args(["run", "--preset", "paper-fig4", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0), "{}", String::from_utf8_lossy(&status.stderr));
    for name in [
        "report.json",
        "summary.txt",
        "summary.csv",
        "node_0_histogram.csv",
        "node_3_histogram.csv",
    ] {
        assert!(out.join(name).exists(), "{name}");
    }
    let report: serde_json::Value = serde_json::from_str(&read(&out.join("report.json"))).unwrap();
    assert_eq!(report["schema"], "dqaa-distributed-report/1");
    assert_eq!(report["l"], 5);

    let summary = read(&out.join("summary.csv"));
    let bearing: Vec<&str> = summary
        .lines()
        .skip(1)
        .map(|row| row.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(bearing, ["false", "true", "false", "true"]);
}

#[test]
fn flags_override_preset() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let status = dqaa()
        .args(["run", "--preset", "paper-fig4", "--shots", "50", "--format", "json", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let report: serde_json::Value = serde_json::from_str(&read(&out.join("report.json"))).unwrap();
    assert_eq!(report["setup"]["shots"], 50);
    assert!(!out.join("summary.txt").exists());
}

#[test]
fn config_file_round_trip_gives_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = cli::preset("paper-fig4").unwrap();
    config.out = Some(dir.path().join("first"));
    let text = config.to_toml();
    let config_path = dir.path().join("run.toml");
    std::fs::write(&config_path, &text).unwrap();

    let reparsed = RunConfig::load(&config_path).unwrap();
    assert_eq!(reparsed, config);
    cli::run(&config).unwrap();

    let second = dir.path().join("second");
    let status = dqaa()
        .args(["run", "--config"])
        .arg(&config_path)
        .arg("--out")
        .arg(&second)
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(
        read(&dir.path().join("first/report.json")),
        read(&second.join("report.json"))
    );
}

#[test]
fn qaa_mode_from_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q");
    let output = dqaa()
        .args(["run", "--mode", "qaa", "--n", "2", "--targets", "11", "--a", "0.25", "--shots", "100", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&read(&out.join("report.json"))).unwrap();
    assert_eq!(report["iterations"], 1);
    assert_eq!(report["guaranteed_bound"], 0.75);
    let csv = read(&out.join("histogram.csv"));
    assert_eq!(csv.lines().next(), Some("bitstring,count,exact_probability"));
    assert_eq!(csv.lines().nth(4), Some("11,100,1.00000000000e0"));
}

#[test]
fn oracle_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let oracle = dir.path().join("oracle.json");
    std::fs::write(&oracle, r#"{"n_bits": 5, "truth_table_hex": "00000001"}"#).unwrap();
    let status = dqaa()
        .args(["run", "--mode", "fixed-point", "--n", "5", "--epsilon", "0.2", "--oracle-file"])
        .arg(&oracle)
        .arg("--out")
        .arg(dir.path().join("o"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));

    std::fs::write(&oracle, r#"{"n_bits": 5, "truth_table_hex": "0001"}"#).unwrap();
    let status = dqaa()
        .args(["run", "--mode", "fixed-point", "--n", "5", "--epsilon", "0.2", "--oracle-file"])
        .arg(&oracle)
        .arg("--out")
        .arg(dir.path().join("o"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn matrix_file_algorithm() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = dir.path().join("x.json");
    // X gate: all prefix amplitude moves onto "1", so node 0 carries no mass
    // even though its sub-oracle is satisfiable.
    std::fs::write(&matrix, r#"{"dim": 2, "entries": [[0,0],[1,0],[1,0],[0,0]]}"#).unwrap();
    let out = dir.path().join("o");
    let status = dqaa()
        .args(["run", "--mode", "distributed", "--n", "3", "--j", "1", "--epsilon", "0.3", "--targets", "101,010"])
        .arg(format!("--prefix-algorithm=file:{}", matrix.display()))
        .args(["--suffix-algorithm", "uniform-hadamard", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&read(&out.join("report.json"))).unwrap();
    let nodes = &report["account"]["nodes"];
    assert_eq!(nodes[0]["target_mass"], 0.0);
    assert_eq!(nodes[0]["non_target_mass"], 0.0);
    assert_eq!(nodes[0]["conditional"], 0.0);
    assert!((nodes[1]["target_mass"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert!(["101", "010"].contains(&report["winner"]["bitstring"].as_str().unwrap()));

    std::fs::write(&matrix, r#"{"dim": 2, "entries": [[1,0],[1,0],[0,0],[1,0]]}"#).unwrap();
    let status = dqaa()
        .args(["run", "--mode", "distributed", "--n", "3", "--j", "1", "--epsilon", "0.3", "--targets", "101"])
        .arg(format!("--prefix-algorithm=file:{}", matrix.display()))
        .args(["--suffix-algorithm", "uniform-hadamard", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    // usage errors
    assert_eq!(dqaa().args(["run", "--mode", "qaa"]).status().unwrap().code(), Some(2));
    assert_eq!(dqaa().args(["run", "--preset", "nope"]).status().unwrap().code(), Some(2));
    assert_eq!(dqaa().args(["bogus"]).status().unwrap().code(), Some(2));
    // no target anywhere
    let status = dqaa()
        .args(["run", "--mode", "distributed", "--n", "4", "--j", "1", "--epsilon", "0.3", "--predicate", "empty", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    // delta so small the iteration cap trips
    let status = dqaa()
        .args(["run", "--preset", "fixed-point-grover", "--delta", "1e-9", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
}

#[test]
fn schedule_subcommand() {
    let output = dqaa().args(["schedule", "--l", "5", "--epsilon", "0.3"]).output().unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    for r in 0..5 {
        assert_eq!(rows[r][1], -rows[4 - r][2]);
    }

    let one = dqaa().args(["schedule", "--l", "1", "--epsilon", "0.3"]).output().unwrap();
    assert_eq!(String::from_utf8(one.stdout).unwrap().lines().filter(|l| !l.starts_with('#')).count(), 2);

    let bad = dqaa().args(["schedule", "--l", "3", "--epsilon", "1.5"]).status().unwrap();
    assert_eq!(bad.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sched/l5.csv");
    let status = dqaa()
        .args(["schedule", "--l", "5", "--epsilon", "0.3", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(read(&path), text);
}

#[test]
fn preset_listing() {
    let output = dqaa().args(["preset"]).output().unwrap();
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("paper-fig4"));
    let output = dqaa().args(["preset", "paper-fig4"]).output().unwrap();
    let config = RunConfig::from_toml(&String::from_utf8(output.stdout).unwrap()).unwrap();
    assert_eq!(config, cli::preset("paper-fig4").unwrap());
}
