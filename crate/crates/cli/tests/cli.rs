use std::fs;
use std::path::Path;
use std::process::Command;

use cc4_cli::document::Document;
use cc4_cli::golden;

fn cc4<I, S>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let out = Command::new(env!("CARGO_BIN_EXE_cc4"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn path_arg(p: &Path) -> String {
    p.to_str().unwrap().to_string()
}

#[test]
fn negative_mass_is_a_validation_error() {
    let (code, _, err) = cc4(["solve", "--masses", "10,-1,3,4"]);
    assert_eq!(code, 1);
    assert!(err.contains("mass 2"), "{err}");
}

#[test]
fn wrong_mass_count_and_unknown_flags() {
    assert_eq!(cc4(["solve", "--masses", "1,2,3"]).0, 1);
    assert_eq!(cc4(["solve", "--masses", "1,2,3,4", "--bogus"]).0, 1);
    assert_eq!(cc4(["map", "--masses", "1,2,3,4", "--grid", "1x5"]).0, 1);
    assert_eq!(cc4(["--help"]).0, 0);
}

#[test]
fn kite_needs_an_equal_pair() {
    let (code, _, err) = cc4(["kite", "--masses", "1,2,3,4"]);
    assert_eq!(code, 1);
    assert!(err.contains("m3 = m4"), "{err}");

    let (code, _, err) = cc4(["kite", "--masses", "9,8,9,10"]);
    assert_eq!(code, 1);
    assert!(err.contains("--relabel"), "{err}");
}

#[test]
fn relabeled_kite_reports_input_labels() {
    let (code, out, err) = cc4(["kite", "--masses", "9,8,9,10", "--relabel", "--out", "-"]);
    assert_eq!(code, 0, "{err}");
    let doc = Document::from_json(&out).unwrap();
    assert_eq!(doc.masses, [9.0, 8.0, 9.0, 10.0]);
    assert_eq!(doc.relabeling, Some([1, 3, 0, 2]));
    assert_eq!(doc.solutions.len(), 3);
    for r in &doc.solutions {
        // particles 1 and 3 are the equal pair
        let d = r.distance_set().unwrap();
        assert!((d.get(1, 0) - d.get(1, 2)).abs() < 1e-12);
        assert!((d.get(3, 0) - d.get(3, 2)).abs() < 1e-12);
    }
}

#[test]
fn golden_files_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("general.json", golden::GENERAL),
        ("equal_pair.json", golden::EQUAL_PAIR),
    ] {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        let (code, out, err) = cc4(["verify".to_string(), path_arg(&p)]);
        assert_eq!(code, 0, "{name}: {out}{err}");
        assert!(out.contains("records pass"));
    }
}

#[test]
fn perturbed_distance_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = golden::general();
    *doc.solutions[2].distances.get_mut("r12").unwrap() += 1e-6;
    let p = dir.path().join("bad.json");
    fs::write(&p, doc.to_json()).unwrap();
    let (code, _, err) = cc4(["verify".to_string(), path_arg(&p)]);
    assert_eq!(code, 2);
    assert!(err.contains("FAIL"), "{err}");
}

#[test]
fn wrong_kind_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = golden::general();
    doc.solutions[0].kind = "concave-2".into();
    let p = dir.path().join("kind.json");
    fs::write(&p, doc.to_json()).unwrap();
    let (code, _, err) = cc4(["verify".to_string(), path_arg(&p)]);
    assert_eq!(code, 2);
    assert!(err.contains("kind is concave-1"), "{err}");
}

#[test]
fn malformed_document_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.json");
    fs::write(&p, "{\n  \"schema_version\": 1,\n  \"command\": solve\n}").unwrap();
    let (code, _, err) = cc4(["verify".to_string(), path_arg(&p)]);
    assert_eq!(code, 1);
    assert!(err.contains("line 3"), "{err}");

    fs::write(&p, golden::GENERAL.replace("\"r12\"", "\"r15\"")).unwrap();
    let (code, _, err) = cc4(["verify".to_string(), path_arg(&p)]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn missing_files_are_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.json");
    assert_eq!(cc4(["verify".to_string(), path_arg(&missing)]).0, 3);
    let (code, _, err) = cc4([
        "solve".to_string(),
        "--masses".into(),
        "1,1,1,1".into(),
        "--settings".into(),
        path_arg(&missing),
    ]);
    assert_eq!(code, 3, "{err}");
    let out = dir.path().join("no/such/dir/out.json");
    let (code, _, _) = cc4([
        "kite".to_string(),
        "--masses".into(),
        "10,8,9,9".into(),
        "--out".into(),
        path_arg(&out),
    ]);
    assert_eq!(code, 3);
}

#[test]
fn settings_file_is_checked() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s.json");
    fs::write(&p, r#"{"lambda_scan_points": 3000, "typo": 1}"#).unwrap();
    let (code, _, err) = cc4([
        "kite".to_string(),
        "--masses".into(),
        "10,8,9,9".into(),
        "--settings".into(),
        path_arg(&p),
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("typo"), "{err}");

    fs::write(&p, r#"{"lambda_scan_points": 3000}"#).unwrap();
    let (code, out, err) = cc4([
        "kite".to_string(),
        "--masses".into(),
        "10,8,9,9".into(),
        "--settings".into(),
        path_arg(&p),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("3 configurations"));
}

#[test]
fn kite_document_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("kite.json");
    let (code, table, err) = cc4([
        "kite".to_string(),
        "--masses".into(),
        "10,8,9,9".into(),
        "--out".into(),
        path_arg(&p),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(table.contains("symmetric: r13 = r14, r23 = r24"), "{table}");
    let (code, out, _) = cc4(["verify".to_string(), path_arg(&p)]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn map_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("atlas");
    let (code, out, err) = cc4([
        "map".to_string(),
        "--masses".into(),
        "10,13,15,17".into(),
        "--grid".into(),
        "2x2".into(),
        "--out".into(),
        path_arg(&base),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("4 samples"), "{out}");
    let csv = fs::read_to_string(dir.path().join("atlas.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "theta,phi,u,v,pattern_label");
    assert_eq!(lines.len(), 5);
    let svg = fs::read_to_string(dir.path().join("atlas.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(!dir.path().join("atlas-solutions.csv").exists());
}
