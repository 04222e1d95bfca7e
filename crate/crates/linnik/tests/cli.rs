//! End-to-end tests of the command-line surface: exit codes, output
//! formats, and agreement between the human and JSON emissions.

use std::collections::HashMap;
use std::process::{Command, Output};

fn linnik(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linnik"))
        .args(args)
        .output()
        .expect("spawn linnik")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

/// Parses `key: value` lines into a map.
fn parse_human(text: &str) -> HashMap<String, String> {
    text.lines()
        .filter_map(|line| line.split_once(": "))
        .map(|(k, v)| (k.to_owned(), v.to_owned()))
        .collect()
}

#[test]
fn verify_lemma_passes_and_renders_endpoints() {
    let out = linnik(&["verify-lemma", "--digits", "6"]);
    assert_eq!(exit_code(&out), 0);
    let human = parse_human(&stdout_of(&out));
    assert_eq!(human["verdict"], "PASS");
    assert_eq!(human["s_low"], "-0.269776");
    assert!(human["s_high"].starts_with("-0.0051"));
    assert_eq!(human["discriminant_sign"], "-1");
}

#[test]
fn verify_lemma_json_schema_and_human_agreement() {
    let json_out = linnik(&["verify-lemma", "--json"]);
    assert_eq!(exit_code(&json_out), 0);
    let doc: serde_json::Value =
        serde_json::from_str(&stdout_of(&json_out)).expect("valid JSON report");
    for key in [
        "verdict",
        "discriminant_sign",
        "s_low",
        "s_high",
        "epsilon_max",
        "c1",
        "c2",
        "c3",
    ] {
        assert!(doc.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(doc["verdict"], "PASS");

    // The human rendering carries the same numeric content.
    let human = parse_human(&stdout_of(&linnik(&["verify-lemma"])));
    for key in ["s_low", "s_high", "epsilon_max", "c1", "c2", "c3"] {
        assert_eq!(
            doc[key].as_str().expect("string field"),
            human[key],
            "JSON and human disagree on {key}"
        );
    }
    assert_eq!(doc["discriminant_sign"].to_string(), human["discriminant_sign"]);
}

#[test]
fn verify_lemma_rejects_zero_digits() {
    let out = linnik(&["verify-lemma", "--digits", "0"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn scan_emits_header_rows_and_summary() {
    let out = linnik(&["scan", "--q-min", "3", "--q-max", "100"]);
    assert_eq!(exit_code(&out), 0);
    let stdout = stdout_of(&out);
    let mut lines = stdout.lines();
    assert_eq!(
        lines.next(),
        Some("q,q3,q2,worst_a,least_prime,exponent,status")
    );
    assert_eq!(lines.count(), 98);
    let stderr = stderr_of(&out);
    assert!(stderr.contains("violations: 0"), "stderr: {stderr}");
    assert!(stderr.contains("records: 98"));
}

#[test]
fn scan_single_modulus_row() {
    let out = linnik(&["scan", "--q-min", "5", "--q-max", "5"]);
    assert_eq!(exit_code(&out), 0);
    let stdout = stdout_of(&out);
    assert_eq!(
        stdout,
        "q,q3,q2,worst_a,least_prime,exponent,status\n5,1,5,4,19,1.829483,OK\n"
    );
}

#[test]
fn scan_rejects_reversed_range() {
    let out = linnik(&["scan", "--q-min", "10", "--q-max", "3"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn scan_cubic_bound_filters_rows() {
    let out = linnik(&[
        "scan",
        "--q-min",
        "3",
        "--q-max",
        "30",
        "--cubic-bound",
        "1",
    ]);
    assert_eq!(exit_code(&out), 0);
    let stdout = stdout_of(&out);
    // 8, 16, 24 and 27 carry cubes; their rows must be absent.
    for q in [8, 16, 24, 27] {
        assert!(
            !stdout.lines().any(|l| l.starts_with(&format!("{q},"))),
            "q = {q} should be filtered"
        );
    }
    assert_eq!(stdout.lines().count(), 1 + 28 - 4);
}

#[test]
fn scan_jobs_flag_does_not_change_output() {
    let base = linnik(&["scan", "--q-min", "3", "--q-max", "60"]);
    let jobs2 = linnik(&["scan", "--q-min", "3", "--q-max", "60", "--jobs", "2"]);
    assert_eq!(stdout_of(&base), stdout_of(&jobs2));
}

#[test]
fn scan_reports_violations_with_exit_one() {
    // An absurdly strict bound forces cap-exceeded records, which the cap
    // logic attributes to the exponent bound and counts as violations.
    let out = linnik(&[
        "scan",
        "--q-min",
        "3",
        "--q-max",
        "10",
        "--exponent",
        "1.01",
        "--constant",
        "0.5",
    ]);
    assert_eq!(exit_code(&out), 1);
    let stderr = stderr_of(&out);
    assert!(!stderr.contains("violations: 0"), "stderr: {stderr}");
    assert!(stdout_of(&out).contains("CAP_EXCEEDED"));
}

#[test]
fn least_prime_command() {
    let out = linnik(&["least-prime", "1", "3"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_of(&out), "7\n");

    let invalid = linnik(&["least-prime", "2", "4"]);
    assert_eq!(exit_code(&invalid), 2);

    let not_found = linnik(&["least-prime", "1", "3", "--cap", "5"]);
    assert_eq!(exit_code(&not_found), 0);
    assert_eq!(stdout_of(&not_found), "NOT_FOUND\n");
}

#[test]
fn cubic_part_command() {
    let out = linnik(&["cubic-part", "360"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_of(&out), "q3=2 q2=45\n");

    let invalid = linnik(&["cubic-part", "0"]);
    assert_eq!(exit_code(&invalid), 2);
}

#[test]
fn coords_command_human_and_json_agree() {
    let human = linnik(&["coords", "--beta", "0.9", "--gamma", "1.5", "--q", "97"]);
    assert_eq!(exit_code(&human), 0);
    let map = parse_human(&stdout_of(&human));

    let json = linnik(&[
        "coords", "--beta", "0.9", "--gamma", "1.5", "--q", "97", "--json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&json)).expect("valid JSON");
    assert_eq!(doc["lambda"].to_string(), map["lambda"]);
    assert_eq!(doc["mu"].to_string(), map["mu"]);

    let invalid = linnik(&["coords", "--beta", "0.9", "--gamma", "0", "--q", "2"]);
    assert_eq!(exit_code(&invalid), 2);
}

#[test]
fn table_command_prints_reference_rows() {
    let out = linnik(&["table"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout_of(&out),
        "lambda,N\n0.9,5\n1.0,6\n1.1,7\n1.2,9\n1.3,12\n1.4,16\n1.5,23\n"
    );
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("linnik-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rows.csv");
    let out = linnik(&[
        "scan",
        "--q-min",
        "5",
        "--q-max",
        "6",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout_of(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("q,q3,q2,worst_a,least_prime,exponent,status\n"));
    assert_eq!(written.lines().count(), 3);
    std::fs::remove_file(&path).ok();
}

#[test]
fn unknown_flags_exit_two() {
    let out = linnik(&["scan", "--q-min", "3", "--q-max", "4", "--bogus"]);
    assert_eq!(exit_code(&out), 2);
    let no_sub = linnik(&["frobnicate"]);
    assert_eq!(exit_code(&no_sub), 2);
}
