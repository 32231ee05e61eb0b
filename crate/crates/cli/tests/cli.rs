use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use grseg_core::reports::{parse_measures_csv, parse_segments_json, parse_theorem_json};
use grseg_core::segments::IndexType;
use grseg_core::tame::parse_catalog_csv;

fn grseg(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grseg")).args(args).arg("--out").arg(out).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn catalog_writes_loadable_files() {
    let d = tempfile::tempdir().unwrap();
    let o = grseg(&["catalog", "--preset", "kronecker"], d.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = parse_catalog_csv(&fs::read_to_string(d.path().join("catalog.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 25);
    let cat = d.path().join("catalog.json");
    let v = grseg(&["verify", "--catalog", cat.to_str().unwrap()], d.path());
    assert_eq!(code(&v), 0, "{}", String::from_utf8_lossy(&v.stderr));
    let report: serde_json::Value = serde_json::from_slice(&v.stdout).unwrap();
    assert_eq!(report["all_pass"], true);
}

#[test]
fn a21_catalog_contains_the_one_zero_one_quasi_simple() {
    let d = tempfile::tempdir().unwrap();
    let o = grseg(&["catalog", "--preset", "a21", "--L", "8", "--format", "csv"], d.path());
    assert_eq!(code(&o), 0);
    assert!(!d.path().join("catalog.json").exists());
    let rows = parse_catalog_csv(&fs::read_to_string(d.path().join("catalog.csv")).unwrap()).unwrap();
    assert!(rows.iter().any(|r| r.dims == "1 0 1" && r.quasi_length == Some(1) && r.rank == Some(2)));
}

#[test]
fn segments_outputs_round_trip() {
    let d = tempfile::tempdir().unwrap();
    let o = grseg(&["segments", "--preset", "kronecker"], d.path());
    assert_eq!(code(&o), 0);
    let read = |f: &str| fs::read_to_string(d.path().join(f)).unwrap();
    assert_eq!(parse_measures_csv(&read("measures.csv")).unwrap().len(), 14);
    let an = parse_segments_json(&read("segments.json")).unwrap();
    assert!(an.segments.iter().all(|s| s.index_type != IndexType::Z));
    assert!(parse_theorem_json(&read("theorem_report.json")).unwrap().all_hold);
    assert!(read("hasse.dot").starts_with("digraph"));
}

#[test]
fn sink_source_square_has_no_z_segment() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&grseg(&["segments", "--preset", "a22_sink_source", "--format", "json"], d.path())), 0);
    let an = parse_segments_json(&fs::read_to_string(d.path().join("segments.json")).unwrap()).unwrap();
    assert!(an.segments.iter().all(|s| s.index_type != IndexType::Z));
    assert!(!d.path().join("measures.csv").exists());
}

#[test]
fn measure_by_id_and_inline() {
    let d = tempfile::tempdir().unwrap();
    let o = grseg(&["measure", "--preset", "kronecker", "--id", "7"], d.path());
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("measure: {1,2,4}\n"), "{text}");
    let simple = r#"{"dims":[0,1],"maps":[{"arrow":0,"entries":[[0]]},{"arrow":1,"entries":[[0]]}]}"#;
    let simple = simple.replace("[[0]]", "[[]]");
    let o = grseg(&["measure", "--preset", "kronecker", "--module", &simple, "--format", "json"], d.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["measure"], "{1}");
}

#[test]
fn invalid_inputs_exit_two() {
    let d = tempfile::tempdir().unwrap();
    let zero = r#"{"dims":[0,0],"maps":[{"arrow":0,"entries":[]},{"arrow":1,"entries":[]}]}"#;
    assert_eq!(code(&grseg(&["measure", "--preset", "kronecker", "--module", zero], d.path())), 2);
    assert_eq!(code(&grseg(&["catalog", "--quiver", "/no/such/file.json"], d.path())), 2);
    assert_eq!(code(&grseg(&["catalog", "--preset", "kronecker", "--p", "4"], d.path())), 2);
    assert_eq!(code(&grseg(&["catalog", "--preset", "kronecker", "--L", "1"], d.path())), 2);
    assert_eq!(code(&grseg(&["catalog", "--preset", "e8"], d.path())), 2);
    assert_eq!(code(&grseg(&["catalog"], d.path())), 2);
    let cyc = d.path().join("cyc.json");
    fs::write(&cyc, r#"{"name":"cyc","vertices":2,"arrows":[[0,1],[1,0]],"p":2,"L":5}"#).unwrap();
    assert_eq!(code(&grseg(&["catalog", "--quiver", cyc.to_str().unwrap()], d.path())), 2);
}

#[test]
fn corrupted_catalog_exits_two() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&grseg(&["catalog", "--preset", "kronecker", "--format", "json"], d.path())), 0);
    let path = d.path().join("catalog.json");
    let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    v["entries"][4]["dims"] = serde_json::json!([7, 7]);
    fs::write(&path, v.to_string()).unwrap();
    assert_eq!(code(&grseg(&["verify", "--catalog", path.to_str().unwrap()], d.path())), 2);
    fs::write(&path, "{ not json").unwrap();
    assert_eq!(code(&grseg(&["verify", "--catalog", path.to_str().unwrap()], d.path())), 2);
}

#[test]
fn budget_exhaustion_exits_three_and_flags_partial_output() {
    let d = tempfile::tempdir().unwrap();
    let o = grseg(&["segments", "--preset", "kronecker", "--budget-subspace", "2"], d.path());
    assert_eq!(code(&o), 3);
    let flag: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.path().join("partial.json")).unwrap()).unwrap();
    assert_eq!(flag["complete"], false);
}

#[test]
fn verify_is_seeded() {
    let d = tempfile::tempdir().unwrap();
    let a = grseg(&["verify", "--preset", "kronecker", "--seed", "5"], d.path());
    let b = grseg(&["verify", "--preset", "kronecker", "--seed", "5"], d.path());
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}
