use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rightfront_testkit::fixtures;
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rightfront"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../testkit/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn rows(csv_text: &str) -> Vec<csv::StringRecord> {
    csv::Reader::from_reader(csv_text.as_bytes())
        .records()
        .map(|r| r.unwrap())
        .collect()
}

#[test]
fn validate_clean_fixture() {
    let o = run(&["validate", fixture("john_evening.ndjson").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = rows(&stdout(&o));
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| &r[6] == "Compliant"));
    assert!(stderr(&o).contains("rfc_edu=1.0000"));
    // π7 attaches to π2, which is neither local nor adjacent.
    let long = rows.iter().find(|r| &r[4] == "π7" && &r[5] == "π2").unwrap();
    assert_eq!(&long[11], "true");
}

#[test]
fn validate_flags_violation() {
    let path = fixture("racaille.ndjson");
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let rows = rows(&stdout(&o));
    let bad: Vec<_> = rows.iter().filter(|r| &r[6] == "Violation").collect();
    assert_eq!(bad.len(), 1);
    assert_eq!((&bad[0][4], &bad[0][5]), ("79", "75"));

    let o = run(&["validate", path.to_str().unwrap(), "--no-normalize"]);
    let bad = rows_with(&stdout(&o), "Violation");
    assert_eq!(
        bad,
        vec![("79".to_string(), "74".to_string()), ("79".into(), "75".into())]
    );
}

fn rows_with(text: &str, status: &str) -> Vec<(String, String)> {
    let mut out: Vec<_> = rows(text)
        .iter()
        .filter(|r| &r[6] == status)
        .map(|r| (r[4].to_string(), r[5].to_string()))
        .collect();
    out.sort();
    out
}

#[test]
fn validate_json_and_out_dir() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("reports");
    let o = run(&[
        "validate",
        fixture("mary_garlic.ndjson").to_str().unwrap(),
        "--format",
        "json",
        "--out-dir",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let printed: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(printed.as_array().unwrap().len(), 3);
    let saved: Value = serde_json::from_str(&fs::read_to_string(out.join("verdicts.json")).unwrap()).unwrap();
    assert_eq!(printed, saved);
    assert_eq!(
        rows(&fs::read_to_string(out.join("verdicts.csv")).unwrap()).len(),
        3
    );
    let summary: Value =
        serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["exempt"], 1);
    assert_eq!(summary["rfc_r"], 1.0);
}

#[test]
fn structural_and_gate_flags() {
    let bill = fixture("bill_sports.ndjson");
    let o = run(&["validate", bill.to_str().unwrap()]);
    assert!(stderr(&o).contains("scored=1"));
    let o = run(&["validate", bill.to_str().unwrap(), "--include-structural"]);
    assert!(stderr(&o).contains("scored=2"));

    // Mary again, with π4 attached to π2 by a coordinating relation.
    let dir = TempDir::new().unwrap();
    let text = fixtures::MARY_GARLIC.replace("EntityElaboration", "Narration");
    let p = write(&dir, "mary.ndjson", &text);
    let o = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&[
        "validate",
        p.to_str().unwrap(),
        "--coordinating-open-constituents",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let broken = write(&dir, "broken.ndjson", "{\"id\": \"x\", \"edus\": [\n");
    let o = run(&["validate", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"));

    let misspelled = write(
        &dir,
        "typo.ndjson",
        &fixtures::RACAILLE.replace("\"Comment\"", "\"Elaborationn\""),
    );
    let o = run(&["stats", misspelled.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Elaborationn"));

    let o = run(&["validate", dir.path().join("missing.ndjson").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let empty = write(&dir, "empty.ndjson", "");
    assert_eq!(run(&["stats", empty.to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["validate"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "x", "--format", "xml"]).status.code(), Some(2));
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("validate"));
}

#[test]
fn frontier_command() {
    let john = fixture("john_evening.ndjson");
    let john = john.to_str().unwrap();
    let o = run(&["frontier", john, "john-evening", "--at", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "π7\tLast\nπ′\tOutscopes\nπ1\tTransitiveClosure\n");

    let o = run(&["frontier", john, "john-evening", "--at", "1"]);
    assert_eq!(stdout(&o), "π1\tLast\n");

    let o = run(&["frontier", john, "john-evening", "--at", "6", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().iter().any(|e| e["label"] == "π2"));

    assert_eq!(
        run(&["frontier", john, "john-evening", "--at", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["frontier", john, "john-evening", "--at", "8"])
            .status
            .code(),
        Some(2)
    );
    let o = run(&["frontier", john, "nobody", "--at", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nobody"));
}

#[test]
fn stats_command() {
    let dir = TempDir::new().unwrap();
    let singles: String = (0..3)
        .map(|k| {
            format!(
                "{{\"id\":\"s{k}\",\"edus\":[{{\"id\":\"a\",\"start\":0,\"end\":4,\"text\":\"Yes.\"}}]}}\n"
            )
        })
        .collect();
    let p = write(&dir, "singles.ndjson", &singles);
    let out = dir.path().join("out");
    let o = run(&["stats", p.to_str().unwrap(), "--out-dir", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["distance_histogram"], serde_json::json!({}));
    assert_eq!(v["open_fraction"], 1.0);
    assert_eq!(v["rfc_r"], Value::Null);
    assert_eq!(
        fs::read_to_string(out.join("distance_histogram.csv")).unwrap(),
        "distance,count\n"
    );
    assert!(out.join("stats.json").exists());

    let o = run(&["stats", fixture("racaille.ndjson").to_str().unwrap()]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["violations_per_doc"]["racaille"], 1);
    assert_eq!(v["docs_over_five_violations"], 0.0);
}

#[test]
fn in_process_entry_point() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = rightfront_cli::run(
        [
            "rightfront",
            "frontier",
            fixture("racaille.ndjson").to_str().unwrap(),
            "racaille",
            "--at",
            "5",
        ],
        &mut out,
        &mut err,
    );
    assert_eq!(code, 0);
    let labels: Vec<&str> = std::str::from_utf8(&out)
        .unwrap()
        .lines()
        .map(|l| l.split('\t').next().unwrap())
        .collect();
    assert_eq!(labels, ["78", "77", "[75,77]", "74"]);
}
