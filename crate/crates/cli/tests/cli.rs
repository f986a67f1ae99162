mod common;

use std::fs;

use common::{path_arg, run};
use serde_json::Value;

const PAIR: &str = "a,b\n1,1.4\n-1,0.2\n1,-0.2\n-1,-1.4\n";

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn stderr(out: &std::process::Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn analyze_reports_selected_k() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(&dir, "pair.csv", PAIR);
    let out = run(&["analyze", "--input", path_arg(&data), "--threshold", "0.75"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["selected_k"], 1);
    assert_eq!(report["mode"], "pca");
    assert_eq!(report["variables"], serde_json::json!(["a", "b"]));
    assert!(report.get("reduced_components").is_some());
}

#[test]
fn headerless_input_gets_generated_names() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(&dir, "raw.csv", "1,1.4\n-1,0.2\n1,-0.2\n-1,-1.4\n");
    let out = run(&[
        "analyze",
        "--input",
        path_arg(&data),
        "--no-header",
        "--mode",
        "fa",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["variables"], serde_json::json!(["c1", "c2"]));
    assert_eq!(
        report["loadings"]["column_labels"],
        serde_json::json!(["F1", "F2"])
    );
}

#[test]
fn export_writes_matrix_files() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(&dir, "pair.csv", PAIR);
    let export = dir.path().join("export");
    let report = dir.path().join("report.json");
    let out = run(&[
        "analyze",
        "--input",
        path_arg(&data),
        "--mode",
        "fa",
        "--out",
        path_arg(&report),
        "--export-csv-dir",
        path_arg(&export),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    assert!(report.exists());
    for name in [
        "correlation",
        "loadings",
        "common_variance",
        "eigenvalues",
        "reduced_loadings",
        "implied_correlation",
    ] {
        assert!(export.join(format!("{name}.csv")).exists(), "{name}");
    }
    let loadings = fs::read_to_string(export.join("loadings.csv")).unwrap();
    assert!(loadings.starts_with("variable,F1,F2\na,"));
}

#[test]
fn data_errors_exit_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("text.csv", "a,b\n1,2\n3,abc\n", "abc"),
        ("empty.csv", "a,b\n1,2\n3,\n", "empty cell"),
        ("constant.csv", "a,b\n1,2\n2,2\n3,2\n", "'b'"),
        ("one_row.csv", "a,b\n1,2\n", "row"),
    ];
    for (name, text, needle) in cases {
        let data = write(&dir, name, text);
        let out = run(&["analyze", "--input", path_arg(&data)]);
        assert_eq!(out.status.code(), Some(2), "{name}: {}", stderr(&out));
        assert!(stderr(&out).contains(needle), "{name}: {}", stderr(&out));
    }
    let missing = dir.path().join("missing.csv");
    assert_eq!(
        run(&["verify", "--input", path_arg(&missing)])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn non_numeric_cell_names_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(&dir, "text.csv", "a,b\n1,2\n3,abc\n");
    let err = stderr(&run(&["analyze", "--input", path_arg(&data)]));
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("column 'b'"), "{err}");
}

#[test]
fn usage_errors_exit_with_code_1() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(&dir, "pair.csv", PAIR);
    assert_eq!(run(&["analyze"]).status.code(), Some(1));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    let out = run(&["analyze", "--input", path_arg(&data), "--threshold", "1.5"]);
    assert_eq!(out.status.code(), Some(1));

    let report = dir.path().join("r.json");
    fs::write(
        &report,
        run(&["analyze", "--input", path_arg(&data), "--mode", "fa"]).stdout,
    )
    .unwrap();
    let sim = dir.path().join("s.csv");
    let out = run(&[
        "simulate",
        "--model",
        path_arg(&report),
        "--samples",
        "1",
        "--out",
        path_arg(&sim),
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
}

#[test]
fn help_and_version_succeed() {
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("analyze"));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn simulate_round_trip_through_reduced_model() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(&dir, "pair.csv", PAIR);
    let report = dir.path().join("r.json");
    fs::write(
        &report,
        run(&[
            "analyze",
            "--input",
            path_arg(&data),
            "--mode",
            "fa",
            "--threshold",
            "0.75",
        ])
        .stdout,
    )
    .unwrap();
    let sim = dir.path().join("s.csv");
    let out = run(&[
        "simulate",
        "--model",
        path_arg(&report),
        "--reduced",
        "--samples",
        "20000",
        "--seed",
        "1",
        "--out",
        path_arg(&sim),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let summary: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["k"], 1);
    // one factor: the rescaled model correlation is exactly 1
    assert!(summary["max_correlation_deviation"].as_f64().unwrap() < 1e-9);
    let written = fs::read_to_string(&sim).unwrap();
    assert!(written.starts_with("a,b\n"));
    assert_eq!(written.lines().count(), 20_001);
}

#[test]
fn pca_report_is_not_a_reduced_model() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(&dir, "pair.csv", PAIR);
    let report = dir.path().join("r.json");
    fs::write(
        &report,
        run(&["analyze", "--input", path_arg(&data)]).stdout,
    )
    .unwrap();
    let sim = dir.path().join("s.csv");
    let out = run(&[
        "simulate",
        "--model",
        path_arg(&report),
        "--reduced",
        "--samples",
        "10",
        "--out",
        path_arg(&sim),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--mode fa"));
}
