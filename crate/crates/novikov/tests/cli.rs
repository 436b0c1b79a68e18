use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_novikov"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("novikov-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

#[test]
fn pages_lists_four_cancellations() {
    let o = run(&["pages", "--input", &data("torus_b.json")]);
    assert!(o.status.success());
    let out = stdout(&o);
    let section = out.split("cancellations:").nth(1).unwrap();
    assert_eq!(section.matches("kills").count(), 4);
    assert!(out.contains("E^∞ = 0 everywhere"));
}

#[test]
fn orbits_lists_repeller_and_attractor() {
    let o = run(&["orbits", "--input", &data("torus_b.json")]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("repeller of period 1"));
    assert!(out.contains("attractor of period 1"));
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn exit_codes_by_category() {
    let lower = temp_file(
        "lower.json",
        r#"{"m": 2, "indices": [0, 1], "entries": [{"row": 2, "col": 1, "poly": [[0, 1]]}]}"#,
    );
    assert_eq!(
        run(&["validate", "--input", &lower]).status.code(),
        Some(11)
    );
    let bad = temp_file("bad.json", "{ not json");
    assert_eq!(run(&["validate", "--input", &bad]).status.code(), Some(10));
    let same_sign = temp_file(
        "same_sign.json",
        r#"{"m": 3, "indices": [0, 0, 1], "entries": [
            {"row": 1, "col": 3, "poly": [[1, 1]]}, {"row": 2, "col": 3, "poly": [[1, 1]]}]}"#,
    );
    let o = run(&["validate", "--input", &same_sign]);
    assert_eq!(o.status.code(), Some(12));
    assert!(stdout(&o).contains("same sign"));
    assert_eq!(
        run(&["validate", "--input", "/nonexistent.json"])
            .status
            .code(),
        Some(14)
    );
    assert!(
        !run(&["pages", "--input", &data("torus_b.json"), "--truncate", "0"])
            .status
            .success()
    );
}

#[test]
fn all_is_deterministic_and_ordered_across_jobs() {
    let a = data("torus_a.json");
    let b = data("torus_b.json");
    let serial = run(&["all", "--input", &a, "--input", &b, "--trace"]);
    let parallel = run(&[
        "all", "--input", &a, "--input", &b, "--trace", "--jobs", "2",
    ]);
    assert!(serial.status.success());
    assert_eq!(serial.stdout, parallel.stdout);
    let out = stdout(&serial);
    assert!(out.find(&a).unwrap() < out.find(&b).unwrap());
}

#[test]
fn structured_output_is_json() {
    let o = run(&[
        "all",
        "--input",
        &data("torus_a.json"),
        "--format",
        "structured",
        "--track",
        "raw",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["validation"]["admissible"], true);
    assert_eq!(v["consistency"]["pivots_agree"], true);
    assert!(v["sweep"]["final"]["raw"].is_array());
    assert!(v["sweep"]["final"].get("main").is_none());
}
