//! End-to-end tests of the `walkinv` binary: exit codes, report round-trips
//! and byte-level determinism.

use std::path::Path;
use std::process::{Command, Output};

fn walkinv(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_walkinv"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

#[test]
fn invariants_path3_report() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "p3.txt", "3 2\n0 1\n1 2\n");
    let out = walkinv(&["invariants", &input, "--json", "report.json"], dir.path());
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("W = 4"), "{stdout}");
    assert!(stdout.contains("kemeny = 6"), "{stdout}");

    // Emitted JSON re-serializes byte-identically.
    let raw = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    let value: serde_json::Value = serde_json::from_str(&raw).unwrap();
    let again = serde_json::to_string_pretty(&value).unwrap() + "\n";
    assert_eq!(raw, again);

    let costs = &value["results"]["cost_table"];
    assert_eq!(costs["cc"][0], "5");
    assert_eq!(value["results"]["invariants"]["W"], "4");
    assert_eq!(value["passed"], true);
}

#[test]
fn invariants_k2_cover_costs() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "k2.txt", "2 1\n0 1\n");
    let out = walkinv(&["invariants", &input, "--json", "k2.json"], dir.path());
    assert!(out.status.success());
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("k2.json")).unwrap())
            .unwrap();
    assert_eq!(value["results"]["cost_table"]["cc"][0], "1");
    assert_eq!(value["results"]["cost_table"]["cc"][1], "1");
}

#[test]
fn malformed_edge_line_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bad.txt", "3 2\n0 1\na b\n");
    let out = walkinv(&["invariants", &input], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 3"), "{stderr}");
}

#[test]
fn disconnected_input_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "disc.txt", "4 2\n0 1\n2 3\n");
    let out = walkinv(&["invariants", &input], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_trees_small_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = walkinv(
        &["verify", "--suite", "trees", "--max-n", "4", "--json", "trees.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("result: PASS"));
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("trees.json")).unwrap())
            .unwrap();
    assert_eq!(value["passed"], true);
}

#[test]
fn verify_extremal_small_reports_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let out = walkinv(
        &["verify", "--suite", "extremal", "--max-n", "4", "--json", "ext.json"],
        dir.path(),
    );
    assert!(out.status.success());
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("ext.json")).unwrap())
            .unwrap();
    let certs = value["results"]["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 18); // 6 quantities x n in {2, 3, 4}
    assert!(certs.iter().all(|c| c["matches_formula"] == true));
}

#[test]
fn verify_max_n_guard_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = walkinv(&["verify", "--suite", "graphs", "--max-n", "9"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn counterexamples_inconclusive_flag_controls_exit() {
    let dir = tempfile::tempdir().unwrap();
    // At n <= 4 two of the three witnesses cannot be found.
    let strict = walkinv(
        &["verify", "--suite", "counterexamples", "--max-n", "4"],
        dir.path(),
    );
    assert_eq!(strict.status.code(), Some(1));

    let lenient = walkinv(
        &[
            "verify",
            "--suite",
            "counterexamples",
            "--max-n",
            "4",
            "--allow-inconclusive",
        ],
        dir.path(),
    );
    assert!(lenient.status.success(), "{lenient:?}");
    let stdout = String::from_utf8(lenient.stdout).unwrap();
    assert!(stdout.contains("inconclusive"));
}

#[test]
fn scaling_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "scaling", "--sizes", "16,24", "--samples", "4", "--seed", "9", "--csv", "scale.csv",
    ];
    let first = walkinv(&args, dir.path());
    assert!(first.status.success());
    let csv1 = std::fs::read(dir.path().join("scale.csv")).unwrap();
    let second = walkinv(&args, dir.path());
    assert!(second.status.success());
    let csv2 = std::fs::read(dir.path().join("scale.csv")).unwrap();
    assert_eq!(csv1, csv2);

    let text = String::from_utf8(csv1).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "n,samples,cc_norm_mean,rc_norm_mean,ct_norm_mean");
    assert!(lines[1].starts_with("16,4,"));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn scaling_size_guard_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = walkinv(&["scaling", "--sizes", "4096", "--samples", "1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_override_env_var() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "p3.txt", "3 2\n0 1\n1 2\n");
    let out = Command::new(env!("CARGO_BIN_EXE_walkinv"))
        .args(["invariants", &input])
        .env("WALKINV_THREADS", "1")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());

    let bad = Command::new(env!("CARGO_BIN_EXE_walkinv"))
        .args(["invariants", &input])
        .env("WALKINV_THREADS", "zero")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
