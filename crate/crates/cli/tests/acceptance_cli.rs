//! Criterion 12 of the acceptance suite: report determinism and error
//! paths, exercised through the installed binary.

use std::path::PathBuf;
use std::process::Command;

fn harmdisk() -> Command {
    Command::new(env!("CARGO_BIN_EXE_harmdisk"))
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("harmdisk-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn criterion_12_verify_all_is_byte_identical() {
    let out1 = temp_path("all1.json");
    let out2 = temp_path("all2.json");
    for out in [&out1, &out2] {
        let status = harmdisk()
            .args(["verify", "all", "--seed", "7", "--out"])
            .arg(out)
            .status()
            .expect("spawn harmdisk");
        assert!(status.success(), "verify all must pass");
    }
    let bytes1 = std::fs::read(&out1).unwrap();
    let bytes2 = std::fs::read(&out2).unwrap();
    assert_eq!(bytes1, bytes2, "same seed must give identical reports");
    let _ = std::fs::remove_file(&out1);
    let _ = std::fs::remove_file(&out2);
    println!("criterion 12 PASS: verify all --seed 7 is byte-identical across runs");
}

#[test]
fn criterion_12_malformed_input_exits_2() {
    let bad = temp_path("bad.json");
    std::fs::write(&bad, r#"{"g": [[0.0, 0.0]]}"#).unwrap();
    let output = harmdisk().arg("analyze").arg(&bad).output().expect("spawn");
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(
        stderr.contains("h coefficients missing"),
        "diagnostic: {stderr}"
    );

    let garbled = temp_path("garbled.json");
    std::fs::write(&garbled, "{oops").unwrap();
    let output = harmdisk().arg("analyze").arg(&garbled).output().expect("spawn");
    assert_eq!(output.status.code(), Some(2));

    let _ = std::fs::remove_file(&bad);
    let _ = std::fs::remove_file(&garbled);
    println!("criterion 12 PASS: malformed input exits with code 2 and a field diagnostic");
}

#[test]
fn analyze_fixture_reports_known_values() {
    let output = harmdisk()
        .args(["analyze", "--fixture", "H_1", "--format", "json"])
        .output()
        .expect("spawn");
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    let norm = doc["norm"]["value"].as_f64().unwrap();
    assert!((norm - 2.0).abs() < 0.02, "norm {norm}");
    let covering = doc["covering_radius"].as_f64().unwrap();
    assert!((covering - 0.38629).abs() < 1e-4, "covering {covering}");
    assert_eq!(doc["schema_version"], 1);
}

#[test]
fn analyze_identity_reports_infinite_thresholds() {
    let output = harmdisk()
        .args(["analyze", "--fixture", "identity"])
        .output()
        .expect("spawn");
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(doc["norm"]["value"].as_f64().unwrap(), 0.0);
    // f64::INFINITY serializes as null in JSON
    assert!(doc["hardy_thresholds"]["p_qc"].is_null());
    assert!(doc["hardy_thresholds"]["p_general"].is_null());
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let output = harmdisk().args(["verify", "nonsense"]).output().expect("spawn");
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn verify_extremal_csv_has_the_stated_header() {
    let output = harmdisk()
        .args(["verify", "extremal", "--format", "csv"])
        .output()
        .expect("spawn");
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.starts_with("check_id,subject,lhs,rhs,margin,pass\n"));
}

#[test]
fn export_roundtrips_through_analyze() {
    let path = temp_path("h1.json");
    let status = harmdisk()
        .args(["export", "H_1", "--order", "512", "--out"])
        .arg(&path)
        .status()
        .expect("spawn");
    assert!(status.success());
    let output = harmdisk().arg("analyze").arg(&path).output().expect("spawn");
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    let norm = doc["norm"]["value"].as_f64().unwrap();
    assert!((norm - 2.0).abs() < 0.03, "norm {norm}");
    let _ = std::fs::remove_file(&path);
}
