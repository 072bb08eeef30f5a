//! End-to-end tests against the compiled binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn cograde(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cograde"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn json_stdout(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("json stdout")
}

#[test]
fn assess_table_prints_published_values() {
    let out = cograde(&["assess", "--input", fixture("shelter.csv").to_str().unwrap()]);
    let table = stdout(&out);
    assert!(table.contains("cohort: shelter (38 students)"), "{table}");
    assert!(table.contains("mean 1.95"), "{table}");
    for needle in ["rm          1.45", "grm         1.16", "gpa         0.95"] {
        assert!(table.contains(needle), "missing {needle:?} in:\n{table}");
    }
    assert!(table.matches("unsatisfactory").count() >= 6, "{table}");
    assert!(table.contains("(midpoint heuristic)"), "{table}");
}

#[test]
fn assess_json_reorders_rows_and_keeps_precision() {
    let out = cograde(&[
        "assess",
        "--input",
        fixture("shelter.csv").to_str().unwrap(),
        "--json",
    ]);
    let report = json_stdout(&out);
    // The fixture lists grades best-first; the report is worst-first.
    let counts: Vec<u64> = report["grades"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![18, 9, 6, 5, 0]);
    let grm = report["models"]
        .as_array()
        .unwrap()
        .iter()
        .find(|m| m["model"] == "grm")
        .expect("grm row");
    let xc = grm["xc"].as_f64().unwrap();
    assert!((xc - (0.7 * 74.0 / 38.0 - 0.2)).abs() < 1e-12, "full precision xc, got {xc}");
    let frequencies: f64 = report["grades"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["frequency"].as_f64().unwrap())
        .sum();
    assert!((frequencies - 1.0).abs() < 1e-12);
    assert_eq!(report["config"]["k"], 30.0);
}

#[test]
fn assess_classifies_scores_under_either_scale() {
    let scores = fixture("scores_sample.csv");
    let out = cograde(&["assess", "--input", scores.to_str().unwrap(), "--json"]);
    let report = json_stdout(&out);
    let counts: Vec<u64> = report["grades"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![2, 2, 3, 2, 3], "default bands");

    let strict = fixture("strict_scale.json");
    let out = cograde(&[
        "assess",
        "--input",
        scores.to_str().unwrap(),
        "--scale",
        strict.to_str().unwrap(),
        "--json",
    ]);
    let report = json_stdout(&out);
    let counts: Vec<u64> = report["grades"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![3, 2, 3, 2, 2], "strict bands");
}

#[test]
fn assess_json_round_trips() {
    let out = cograde(&[
        "assess",
        "--input",
        fixture("regular.csv").to_str().unwrap(),
        "--json",
    ]);
    let report = json_stdout(&out);

    // Rebuild a counts file from the emitted report and assess it again.
    let dir = tempfile::tempdir().unwrap();
    let rebuilt = dir.path().join("rebuilt.csv");
    let mut csv = String::from("grade,count\n");
    for g in report["grades"].as_array().unwrap() {
        csv.push_str(&format!("{},{}\n", g["label"].as_str().unwrap(), g["count"]));
    }
    std::fs::write(&rebuilt, csv).unwrap();
    let again = json_stdout(&cograde(&[
        "assess",
        "--input",
        rebuilt.to_str().unwrap(),
        "--json",
    ]));
    assert_eq!(report["grades"], again["grades"]);
    assert_eq!(report["statistics"], again["statistics"]);
    assert_eq!(report["models"], again["models"]);
}

#[test]
fn compare_reports_all_three_shapes() {
    let shelter = fixture("shelter.csv");
    let regular = fixture("regular.csv");
    let out = stdout(&cograde(&[
        "compare",
        shelter.to_str().unwrap(),
        regular.to_str().unwrap(),
    ]));
    assert!(out.contains("winner: shelter (basis: primary-xc)"), "{out}");
    assert!(out.contains("Σi·y_i") && out.contains("Σy_i²"), "{out}");

    let ci = fixture("class_i.csv");
    let cii = fixture("class_ii.csv");
    let out = stdout(&cograde(&["compare", ci.to_str().unwrap(), cii.to_str().unwrap()]));
    assert!(out.contains("winner: class_i (basis: secondary-yc-high-branch)"), "{out}");

    let out = stdout(&cograde(&[
        "compare",
        shelter.to_str().unwrap(),
        shelter.to_str().unwrap(),
    ]));
    assert!(out.contains("winner: tie"), "{out}");
    assert!(out.contains("note:"), "tie should carry the explanatory note: {out}");

    let json = json_stdout(&cograde(&[
        "compare",
        ci.to_str().unwrap(),
        cii.to_str().unwrap(),
        "--model",
        "tfam",
        "--json",
    ]));
    assert_eq!(json["verdict"]["winner"], "first");
    assert_eq!(json["verdict"]["basis"], "secondary-yc-high-branch");
    assert_eq!(json["model"], "tfam");
}

#[test]
fn compare_rejects_non_cog_models() {
    let shelter = fixture("shelter.csv");
    let out = cograde(&[
        "compare",
        shelter.to_str().unwrap(),
        shelter.to_str().unwrap(),
        "--model",
        "mean",
    ]);
    assert_eq!(out.status.code(), Some(2), "clap usage error");
}

#[test]
fn validate_is_deterministic_and_fails_on_zero_tolerance() {
    let args = ["validate", "--samples", "40", "--seed", "7"];
    let first = cograde(&args);
    let second = cograde(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "records must be byte-identical");
    let summary = String::from_utf8_lossy(&first.stderr);
    assert!(summary.contains("0 failed"), "{summary}");
    assert_eq!(first.stdout.iter().filter(|&&b| b == b'\n').count(), 40 * 2 * 6);

    let dir = tempfile::tempdir().unwrap();
    let jsonl = dir.path().join("records.jsonl");
    let out = cograde(&[
        "validate",
        "--samples",
        "5",
        "--jsonl",
        jsonl.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // Summary moves to stdout when records go to a file.
    assert!(String::from_utf8_lossy(&out.stdout).contains("0 failed"));
    let lines = std::fs::read_to_string(&jsonl).unwrap();
    assert_eq!(lines.lines().count(), 5 * 2 * 6);
    let first_record: serde_json::Value = serde_json::from_str(lines.lines().next().unwrap()).unwrap();
    assert_eq!(first_record["pass"], true);

    let out = cograde(&["validate", "--samples", "3", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(3), "zero tolerance must trip exit 3");
}

#[test]
fn plot_emits_svg_and_exact_data() {
    let dir = tempfile::tempdir().unwrap();
    let svg_path = dir.path().join("shelter.svg");
    let data_path = dir.path().join("shelter.csv");
    let out = cograde(&[
        "plot",
        "--input",
        fixture("shelter.csv").to_str().unwrap(),
        "--kind",
        "bars-grm",
        "--out",
        svg_path.to_str().unwrap(),
        "--data",
        data_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<rect").count(), 1 + 5, "background + five bars");
    assert!(svg.contains("fill-opacity"), "overlapped bars are translucent");

    let data = std::fs::read_to_string(&data_path).unwrap();
    let rows: Vec<&str> = data.lines().collect();
    assert_eq!(rows[0], "index,label,x0,x1,height");
    assert_eq!(rows.len(), 6);
    assert!(rows[1].starts_with("0,F,0,1,"), "{}", rows[1]);
    assert!(rows[5].starts_with("4,A,2.8,3.8,"), "{}", rows[5]);

    // Juxtaposed bars are opaque and end at [4,5].
    let out = cograde(&[
        "plot",
        "--input",
        fixture("shelter.csv").to_str().unwrap(),
        "--kind",
        "bars-rm",
        "--out",
        svg_path.to_str().unwrap(),
        "--data",
        data_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(!std::fs::read_to_string(&svg_path).unwrap().contains("fill-opacity"));
    let data = std::fs::read_to_string(&data_path).unwrap();
    assert!(data.lines().last().unwrap().starts_with("4,A,4,5,"), "{data}");
}

#[test]
fn triangle_plot_degenerates_to_the_worst_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let all_f = dir.path().join("all_f.csv");
    std::fs::write(&all_f, "grade,count\nF,7\n").unwrap();
    let svg_path = dir.path().join("tri.svg");
    let data_path = dir.path().join("tri.csv");
    let out = cograde(&[
        "plot",
        "--input",
        all_f.to_str().unwrap(),
        "--kind",
        "triangle",
        "--out",
        svg_path.to_str().unwrap(),
        "--data",
        data_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let data = std::fs::read_to_string(&data_path).unwrap();
    let rows: Vec<&str> = data.lines().collect();
    assert_eq!(rows[0], "point,x,y");
    let point = |row: &str| -> (String, f64, f64) {
        let mut parts = row.split(',');
        let name = parts.next().unwrap().to_string();
        let x: f64 = parts.next().unwrap().parse().unwrap();
        let y: f64 = parts.next().unwrap().parse().unwrap();
        (name, x, y)
    };
    for (row, name, x, y) in [
        (rows[1], "worst", 0.5, 0.5),
        (rows[2], "balanced", 1.9, 0.1),
        (rows[3], "ideal", 3.3, 0.5),
        (rows[4], "cog", 0.5, 0.5), // all-F COG coincides with the worst vertex
    ] {
        let (got_name, got_x, got_y) = point(row);
        assert_eq!(got_name, name);
        assert!((got_x - x).abs() < 1e-12 && (got_y - y).abs() < 1e-12, "{row}");
    }
}

#[test]
fn error_paths_use_distinct_exit_codes() {
    // Missing input file → i/o error.
    let out = cograde(&["assess", "--input", "/nonexistent/never.csv"]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));

    let dir = tempfile::tempdir().unwrap();

    // Malformed row → input error.
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "grade,count\nF,not-a-number\n").unwrap();
    let out = cograde(&["assess", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not-a-number"));

    // Unknown grade label → input error.
    let unknown = dir.path().join("unknown.csv");
    std::fs::write(&unknown, "grade,count\nZ,4\n").unwrap();
    let out = cograde(&["assess", "--input", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown grade"));

    // Duplicate grade row → input error.
    let dup = dir.path().join("dup.csv");
    std::fs::write(&dup, "grade,count\nF,4\nF,5\n").unwrap();
    let out = cograde(&["assess", "--input", dup.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("twice"));

    // Empty cohort → input error.
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "grade,count\nF,0\n").unwrap();
    let out = cograde(&["assess", "--input", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Header/flag mismatch → input error.
    let out = cograde(&[
        "assess",
        "--input",
        fixture("shelter.csv").to_str().unwrap(),
        "--scores",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Unwritable plot destination → i/o error.
    let out = cograde(&[
        "plot",
        "--input",
        fixture("shelter.csv").to_str().unwrap(),
        "--kind",
        "triangle",
        "--out",
        "/nonexistent/dir/out.svg",
    ]);
    assert_eq!(out.status.code(), Some(4));
}
