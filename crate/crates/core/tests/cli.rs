//! End-to-end tests of the qk binary: exit codes, output formats, and the
//! agreement between the JSON and text renderings.

use std::process::{Command, Output};

fn qk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn severi_lists_the_four_dimensions() {
    let out = qk(&["severi", "--n-max", "100"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("{2, 4, 8, 16}"), "{}", text);
}

#[test]
fn severi_json_output_is_machine_readable() {
    let out = qk(&["severi", "--n-max", "100", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let survivors: Vec<u64> = v["data"]["survivors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert_eq!(survivors, vec![2, 4, 8, 16]);
}

#[test]
fn json_and_text_verdicts_agree() {
    let json_out = qk(&["lqel-enum", "--n-max", "20", "--format", "json"]);
    let text_out = qk(&["lqel-enum", "--n-max", "20"]);
    assert!(json_out.status.success() && text_out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    let names: Vec<String> = v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| {
            format!(
                "[{}] {}: {}",
                x["outcome"].as_str().unwrap().replace("fail", "FAIL"),
                x["name"].as_str().unwrap(),
                x["detail"].as_str().unwrap()
            )
        })
        .collect();
    let text = stdout(&text_out);
    let text_lines: Vec<&str> = text.lines().filter(|l| l.starts_with('[')).collect();
    assert_eq!(names.len(), text_lines.len());
    for (expected, actual) in names.iter().zip(&text_lines) {
        assert_eq!(expected, actual);
    }
}

#[test]
fn exit_code_two_on_usage_errors() {
    // m = 2 is excluded by the ring-structure statement.
    let out = qk(&["kring", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = qk(&["divides", "--m", "2", "--l", "4"]);
    assert_eq!(out.status.code(), Some(2));

    let out = qk(&["derive", "--preset", "unknown"]);
    assert_eq!(out.status.code(), Some(2));

    // delta > n violates the query invariant.
    let out = qk(&["lqel", "--n", "3", "--delta", "5"]);
    assert_eq!(out.status.code(), Some(2));

    // Unknown flags are clap usage errors.
    let out = qk(&["severi", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_one_on_verification_failure() {
    // A degree bound too small for certification is a verification failure,
    // not a usage error.
    let out = qk(&[
        "verify-ring",
        "--m-min",
        "6",
        "--m-max",
        "6",
        "--degree-bound",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn divides_examples_from_the_threshold() {
    let out = qk(&["divides", "--m", "9", "--l", "32"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("[divisible]"));
    assert!(stdout(&out).contains("32"));

    let out = qk(&["divides", "--m", "9", "--l", "16"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("[not-divisible]"));

    let out = qk(&["divides", "--m", "3", "--l", "0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("[divisible]"));
}

#[test]
fn kring_prints_the_stated_product_row() {
    let out = qk(&["kring", "--m", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("rank 4"));
    assert!(text.contains("L * X = 4 - 2*X"), "{}", text);

    let out = qk(&["kring", "--m", "5"]);
    assert!(stdout(&out).contains("rank 6"));
}

#[test]
fn landman_and_derive_round_trip() {
    let out = qk(&["landman", "--n", "5", "--k", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("[consistent]"));

    let out = qk(&["landman", "--n", "4", "--k", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("[impossible]"));

    let out = qk(&["derive", "--preset", "scroll", "--l", "3", "--m", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("k = 2"));

    let out = qk(&["derive", "--preset", "lqel"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("(1 + u) * W"));
}

#[test]
fn output_flag_writes_the_report_to_a_file() {
    let dir = std::env::temp_dir().join(format!("qk-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = qk(&[
        "severi",
        "--n-max",
        "20",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["data"]["survivors"].as_array().unwrap().len(), 4);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn degree_bound_forces_a_fresh_oracle_run() {
    let out = qk(&[
        "kring",
        "--m",
        "4",
        "--degree-bound",
        "12",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let prov = v["provenance"][0].as_str().unwrap();
    assert!(prov.contains("degree bound 12"), "{}", prov);
}

#[test]
fn cert_dir_environment_variable_is_honored() {
    let dir = std::env::temp_dir().join(format!("qk-env-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qk"))
        .args([
            "verify-ring",
            "--m-min",
            "4",
            "--m-max",
            "4",
            "--save-certs",
        ])
        .env("QK_CERT_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.join("m4.json").is_file());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_ring_uses_cert_dir_and_saves() {
    let dir = std::env::temp_dir().join(format!("qk-certs-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = qk(&[
        "verify-ring",
        "--m-min",
        "4",
        "--m-max",
        "4",
        "--cert-dir",
        dir.to_str().unwrap(),
        "--save-certs",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(dir.join("m4.json").is_file());
    // Second run reads the saved certificate back.
    let out = qk(&[
        "kring",
        "--m",
        "4",
        "--cert-dir",
        dir.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let prov = v["provenance"][0].as_str().unwrap();
    assert!(prov.contains("file:"), "{}", prov);
    std::fs::remove_dir_all(&dir).ok();
}
