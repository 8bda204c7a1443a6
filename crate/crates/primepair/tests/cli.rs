//! Black-box tests of the binary: the documented invocations, the JSON
//! output contract against `schemas/output.schema.json`, cache reuse, and
//! exit codes.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_primepair"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary spawns")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf8")
}

fn parsed(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is one json document")
}

fn zeros_file() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_10050.txt")
}

fn assert_schema_valid(doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas/output.schema.json");
    let text = std::fs::read_to_string(&path).expect("schema file");
    let schema: Value = serde_json::from_str(&text).expect("schema parses");
    let compiled = jsonschema::JSONSchema::options()
        .with_draft(jsonschema::Draft::Draft7)
        .compile(&schema)
        .expect("schema compiles");
    let violations: Vec<String> = match compiled.validate(doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(violations.is_empty(), "schema violations:\n{}", violations.join("\n"));
}

#[test]
fn count_documented_example_in_csv() {
    let out = run(&["count", "--two-r", "2,6,210", "--checkpoints", "1e3,1e4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# command: count\n"), "{text}");
    for line in ["two_r,1000,10000", "2,35,205", "6,74,411", "210,107,641", "expected,46,214"] {
        assert!(text.lines().any(|l| l == line), "missing {line:?} in:\n{text}");
    }
}

#[test]
fn kernel_documented_example_normalizes_to_one() {
    let out = run(&["kernel", "--type", "jackson", "--lambda", "1", "--eval-mellin", "0,0"]);
    let doc = parsed(&out);
    assert_schema_valid(&doc);
    assert_eq!(doc["command"], "kernel");
    let value = &doc["result"]["mellin"]["value"];
    assert!((value["re"].as_f64().unwrap() - 1.0).abs() <= 1e-10);
    assert!(value["im"].as_f64().unwrap().abs() <= 1e-12);
    assert_eq!(doc["result"]["mellin"]["is_near_pole"], Value::Bool(false));
}

#[test]
fn series_documented_example_is_exactly_zero() {
    let out = run(&["series", "--op", "vlambda", "--lambda", "2", "--s", "2,0", "--terms", "1000"]);
    let doc = parsed(&out);
    assert_schema_valid(&doc);
    let result = &doc["result"];
    assert_eq!(result["value"]["re"].as_f64().unwrap(), 0.0);
    assert_eq!(result["value"]["im"].as_f64().unwrap(), 0.0);
    assert_eq!(result["terms_used"], 0);
}

#[test]
fn paircorr_documented_example_value() {
    let zeros = zeros_file();
    let out = run(&[
        "paircorr",
        "--alpha",
        "1.0",
        "--count",
        "10000",
        "--zeros-file",
        zeros.to_str().unwrap(),
    ]);
    let doc = parsed(&out);
    assert_schema_valid(&doc);
    let value = doc["result"]["value"].as_f64().unwrap();
    assert!((value - 0.712).abs() <= 2e-3, "F(1) = {value}");
    assert!(doc["result"]["zeros_used"].as_u64().unwrap() >= 9_999);
}

#[test]
fn json_documents_validate_against_the_schema() {
    let zeros = zeros_file();
    let zeros = zeros.to_str().unwrap();
    let invocations: Vec<Vec<&str>> = vec![
        vec!["count", "--two-r", "2", "--checkpoints", "1e3", "--output", "json"],
        vec![
            "constants", "--two-r", "2,6", "--sum-m", "100", "--li2", "1e3,1e4", "--lambda",
            "2", "--prime-limit", "1e5", "--output", "json",
        ],
        vec![
            "kernel", "--type", "fejer", "--lambda", "2", "--eval-e", "0.5", "--eval-e-hat",
            "1.0", "--eval-mellin", "0.5,1", "--moment", "0.5,1", "--decay-x", "0.5",
            "--output", "json",
        ],
        vec![
            "zerosum", "--op", "sigma1", "--zeros-file", zeros, "--s", "0.75,0", "--count",
            "200", "--output", "json",
        ],
        vec![
            "zerosum", "--op", "omega", "--zeros-file", zeros, "--count", "150",
            "--delta-grid", "0.2,0.12", "--output", "json",
        ],
        vec![
            "series", "--op", "d2r", "--s", "2,0", "--two-r", "6", "--terms", "1e4",
            "--output", "json",
        ],
        vec![
            "series", "--op", "d0pole", "--delta-grid", "0.2,0.15", "--limit", "2e4",
            "--output", "json",
        ],
        vec![
            "series", "--op", "c2rprobe", "--two-r", "2", "--delta-grid", "0.2,0.1",
            "--limit", "2e4", "--output", "json",
        ],
        vec!["verify", "--suite", "constants", "--output", "json"],
    ];
    for args in invocations {
        let out = run(&args);
        let doc = parsed(&out);
        assert_schema_valid(&doc);
        assert_eq!(doc["command"], args[0], "envelope for {args:?}");
        assert_eq!(doc["config"]["output"], "json");
    }
}

#[test]
fn count_cache_makes_reruns_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = [
        "count", "--two-r", "2,4", "--checkpoints", "1e3,2e3", "--cache-dir", cache,
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let record = dir.path().join("pairs/2000/2.csv");
    assert!(record.is_file(), "missing cache record {record:?}");
    let text = std::fs::read_to_string(&record).unwrap();
    assert!(text.lines().any(|l| l == "1000,35"), "cache content:\n{text}");

    let second = run(&args);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "warm rerun must reproduce bytes");

    // a warm rerun must not rewrite the records
    let before = std::fs::metadata(&record).unwrap().modified().unwrap();
    let third = run(&args);
    assert_eq!(third.status.code(), Some(0));
    let after = std::fs::metadata(&record).unwrap().modified().unwrap();
    assert_eq!(before, after, "cache record was rewritten on a warm run");
}

#[test]
fn usage_and_domain_errors_exit_two() {
    let out = run(&["count", "--two-r", "3", "--checkpoints", "1e3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("even"));

    let out = run(&["verify", "--suite", "zeros"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["zerosum", "--op", "bogus", "--zeros-file", zeros_file().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["series", "--op", "d2r", "--s", "0.4,0", "--terms", "100"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["nosuchcommand"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn capacity_errors_exit_three() {
    let out = run(&["count", "--two-r", "2", "--checkpoints", "3e12"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));

    let zeros = zeros_file();
    let out = run(&[
        "zerosum", "--op", "sigma1", "--zeros-file", zeros.to_str().unwrap(), "--s", "0.75,0",
        "--count", "999999",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn failed_verification_exits_one() {
    // a dense synthetic lattice has far too much close-pair mass, so the
    // pair correlation suite must report FAIL and the process must exit 1
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lattice.txt");
    let mut file = std::fs::File::create(&path).unwrap();
    writeln!(file, "14.134725").unwrap();
    writeln!(file, "21.022040").unwrap();
    for k in 0..10_048u32 {
        writeln!(file, "{}", 21.03 + 0.01 * f64::from(k)).unwrap();
    }
    drop(file);

    let out = run(&["verify", "--suite", "paircorr", "--zeros-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn csv_mode_quotes_and_comments_are_well_formed() {
    let out = run(&["kernel", "--lambda", "2", "--eval-e", "0.25", "--output", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# command: kernel\n"));
    assert!(text.contains("# lambda: 2"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("e(0.25),")), "{text}");
}
