//! End-to-end tests of the `geomforge` binary: exit-code contract, report
//! formats, geometry file round-trips, and byte-stable JSON output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn geomforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geomforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("geomforge-test-{}-{name}", std::process::id()));
    p
}

/// Three points of PG(1-ish) joined pairwise by 2-point lines: a valid
/// partial linear space whose incidence graph is a hexagonal cycle, i.e. an
/// ordinary (thin) triangle.
const TRIANGLE: &str = r#"{
  "q": 2,
  "points": [[1, 0], [0, 1], [1, 1]],
  "lines": [[0, 1], [1, 2], [0, 2]]
}"#;

#[test]
fn usage_errors_exit_2() {
    let out = geomforge(&["--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));

    let out = geomforge(&["group"]);
    assert_eq!(out.status.code(), Some(2), "missing required option");
}

#[test]
fn help_exits_0() {
    let out = geomforge(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Usage"));
}

#[test]
fn passing_checks_exit_0() {
    let out = geomforge(&["constraints", "zsigmondy", "--q", "2", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("overall: PASS"));
}

#[test]
fn invalid_parameters_exit_2() {
    let out = geomforge(&["field", "--p", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).expect("utf8 stderr");
    assert!(err.starts_with("error:"), "stderr was: {err}");
}

#[test]
fn failing_check_exits_1() {
    let path = temp_path("triangle.json");
    std::fs::write(&path, TRIANGLE).expect("write temp geometry");

    let out = geomforge(&["ngon", "--in", path.to_str().expect("utf8 path")]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL"), "table output was: {text}");

    // The same file passes once thin lines are allowed: it is an ordinary
    // 3-gon.
    let out = geomforge(&[
        "ngon",
        "--in",
        path.to_str().expect("utf8 path"),
        "--allow-thin",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
    assert_eq!(report["counts"]["gonality"], 3);

    std::fs::remove_file(&path).ok();
}

#[test]
fn hexagon_export_round_trips_through_ngon() {
    let path = temp_path("hexagon-q2.json");
    let out = geomforge(&[
        "hexagon",
        "--q",
        "2",
        "--export",
        path.to_str().expect("utf8 path"),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = geomforge(&[
        "ngon",
        "--in",
        path.to_str().expect("utf8 path"),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
    assert_eq!(report["counts"]["points"], 63);
    assert_eq!(report["counts"]["lines"], 63);
    assert_eq!(report["counts"]["gonality"], 6);
    assert_eq!(report["counts"]["order_s"], 2);
    assert_eq!(report["counts"]["order_t"], 2);

    std::fs::remove_file(&path).ok();
}

#[test]
fn json_reports_are_byte_identical_across_thread_counts() {
    let a = temp_path("threads-1.json");
    let b = temp_path("threads-4.json");
    for (threads, path) in [("1", &a), ("4", &b)] {
        let out = geomforge(&[
            "showcase",
            "--name",
            "semilinear",
            "--format",
            "json",
            "--threads",
            threads,
            "--out",
            path.to_str().expect("utf8 path"),
        ]);
        assert_eq!(out.status.code(), Some(0));
        // Writing to a file leaves a one-line summary on stdout.
        assert_eq!(stdout(&out), "showcase:semilinear: PASS\n");
    }
    let bytes_a = std::fs::read(&a).expect("first report");
    let bytes_b = std::fs::read(&b).expect("second report");
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, bytes_b);

    let report: serde_json::Value = serde_json::from_slice(&bytes_a).expect("json report");
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["command"], "showcase:semilinear");

    std::fs::remove_file(&a).ok();
    std::fs::remove_file(&b).ok();
}

#[test]
fn timings_flag_adds_elapsed_only() {
    let out = geomforge(&[
        "constraints",
        "zsigmondy",
        "--q",
        "2",
        "--k",
        "6",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let plain: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
    assert!(plain.get("elapsed_ms").is_none());
    // The Zsigmondy exception is reported as a determination, not a failure.
    assert_eq!(plain["counts"]["exception"], "q_k_64");

    let out = geomforge(&[
        "constraints",
        "zsigmondy",
        "--q",
        "2",
        "--k",
        "6",
        "--format",
        "json",
        "--timings",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let timed: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
    assert!(timed["elapsed_ms"].is_u64());
}
