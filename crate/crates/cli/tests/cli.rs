use std::io::Write;
use std::path::PathBuf;

use loopkit_cli::{run, EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_OK, EXIT_USAGE};

fn fixture() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/tables.loops").display().to_string()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("loopkit").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_catalog(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn classify_fixture_rows() {
    let (code, out, _) = cli(&["classify", &fixture(), "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "name,order,right_bol,moufang,srar,ra2,extra,group,def_everywhere,de,df,ef");
    assert!(lines[1].starts_with("16.7.2.1,16,true,false,false,"));
    assert!(lines[2].starts_with("12.1,12,true,true,true,true,"));
}

#[test]
fn classify_text_names_witness_tuples() {
    let (code, out, _) = cli(&["classify", &fixture()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("16.7.2.1: D/E/F empty at (2,2,3,9): S=11 T=9 U=13 V=16"), "{out}");
}

#[test]
fn enumerate_order_two() {
    let (code, out, _) = cli(&["enumerate", "--order", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "loop 2.1\norder 2\n1 2\n2 1\n");
}

#[test]
fn enumerate_output_is_a_valid_catalog() {
    let (code, out, _) = cli(&["enumerate", "--order", "4"]);
    assert_eq!(code, EXIT_OK);
    let recs = loopkit::catalog::parse_catalog(&out).unwrap();
    assert_eq!(recs.len(), 4);
    assert_eq!(recs[3].name, "4.4");
}

#[test]
fn enumerate_limits() {
    assert_eq!(cli(&["enumerate", "--order", "7"]).0, EXIT_USAGE);
    assert_eq!(cli(&["enumerate", "--order", "8", "--long"]).0, EXIT_USAGE);
    assert_eq!(cli(&["enumerate", "--order", "1"]).0, EXIT_USAGE);
}

#[test]
fn validate_reports_each_record() {
    let (code, out, _) = cli(&["validate", &fixture()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("ok 16.7.2.1"));
    assert_eq!(out.lines().count(), 2);

    let bad = temp_catalog("loop good\norder 2\n1 2\n2 1\n\nloop bad\norder 2\n1 2\n1 2\n");
    let (code, out, _) = cli(&["validate", bad.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    assert!(out.contains("ok good"));
    assert!(out.contains("error bad"), "{out}");
    assert!(out.contains("column 1"), "{out}");
}

#[test]
fn parse_errors_name_the_line() {
    let bad = temp_catalog("loop a\norder 3\n1 2 3\n2 3\n");
    let (code, _, err) = cli(&["classify", bad.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("line 4"), "{err}");
    let (code, _, _) = cli(&["survey", "/nonexistent/catalog.loops"]);
    assert_eq!(code, EXIT_INVALID);
}

#[test]
fn ring_check_exit_codes() {
    let (code, _, err) = cli(&["ring-check", "--identity", "right-bol", &fixture()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("16.7.2.1") && err.contains("cap"), "{err}");

    let groups = temp_catalog("loop z3\norder 3\n1 2 3\n2 3 1\n3 1 2\n");
    let (code, out, _) = cli(&["ring-check", "--identity", "right-bol", groups.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "z3: right-bol holds\n");

    // an order-5 loop that is not right Bol
    let non_bol = temp_catalog("loop n5\norder 5\n1 2 3 4 5\n2 1 4 5 3\n3 4 5 1 2\n4 5 2 3 1\n5 3 1 2 4\n");
    let (code, out, err) = cli(&["ring-check", "--identity", "right-bol", non_bol.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    assert!(out.starts_with("n5: right-bol fails at a=["), "{out}");
    assert!(err.contains("n5"));
}

#[test]
fn ring_check_cap_override() {
    let z3 = temp_catalog("loop z3\norder 3\n1 2 3\n2 3 1\n3 1 2\n");
    let path = z3.path().to_str().unwrap();
    assert_eq!(cli(&["ring-check", "--identity", "right-alt", "--cap", "2", path]).0, EXIT_USAGE);
    let (code, out, _) = cli(&["ring-check", "--identity", "right-alt", "--cap", "3", path, "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "name,order,identity,holds,witness\nz3,3,right-alt,true,\n");
}

#[test]
fn survey_json_aggregates() {
    let (code, out, _) = cli(&["survey", "--filter", "non-moufang-bol", &fixture(), "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["aggregates"]["non_moufang_bol"], 1);
    assert_eq!(v["aggregates"]["srar"], 0);
    assert_eq!(v["aggregates"]["non_srar"], 1);
    assert_eq!(v["aggregates"]["non_srar_with_def"], 1);
    assert_eq!(v["records"].as_array().unwrap().len(), 1);
}

#[test]
fn sweep_spec_example() {
    let (code, out, _) = cli(&["sweep", "--order", "5", "--check", "odd-srar-associative", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["records"][0]["loops_scanned"], 56);
    assert_eq!(v["records"][0]["violations"], 0);
    assert_eq!(v["records"][0]["first_violation"], serde_json::Value::Null);
}

#[test]
fn sweep_caps_are_usage_errors() {
    let (code, _, err) = cli(&["sweep", "--order", "6", "--check", "ring-bol-equivalence"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--long"), "{err}");
    assert_eq!(cli(&["sweep", "--order", "7", "--check", "pair-coverage"]).0, EXIT_USAGE);
}

#[test]
fn usage_errors() {
    assert_eq!(cli(&[]).0, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(cli(&["classify", &fixture(), "--format", "xml"]).0, EXIT_USAGE);
    assert_eq!(cli(&["classify", &fixture(), "--jobs", "0"]).0, EXIT_USAGE);
    assert_eq!(cli(&["ring-check", "--identity", "left-bol", &fixture()]).0, EXIT_USAGE);
    assert_eq!(cli(&["survey", "--filter", "moufang", &fixture()]).0, EXIT_USAGE);
    let (code, _, err) = cli(&["sweep", "--order", "5", "--check", "nope"]);
    assert_eq!(code, EXIT_USAGE);
    assert_eq!(err.lines().count(), 1);
    assert_eq!(cli(&["--help"]).0, EXIT_OK);
}
