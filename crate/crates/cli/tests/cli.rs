mod common;

use common::*;

fn cache() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

#[test]
fn deterministic_output() {
    check_determinism(cache().path()).unwrap();
}

#[test]
fn cache_round_trip() {
    check_cache_round_trip(cache().path()).unwrap();
}

#[test]
fn exit_codes() {
    check_exit_codes(cache().path()).unwrap();
}

#[test]
fn json_schemas() {
    check_schemas(cache().path()).unwrap();
}

#[test]
fn spec_examples() {
    let dir = cache();
    let seq = cli(dir.path(), &["seq", "--kind", "kron", "--base", "6,6", "7,5", "6,4,2", "--dmax", "3", "--json"], "");
    assert_eq!(
        seq.stdout,
        "{\"kind\":\"kronecker\",\"base\":[[6,6],[7,5],[6,4,2]],\"shift\":[[],[],[]],\"dmax\":3,\"values\":[1,0,2,1]}\n"
    );
    let fit = cli(dir.path(), &["fit"], "1\n1\n1\n1\n1\n1\n");
    assert!(fit.stdout.contains("period: 1"), "{}", fit.stdout);
    assert!(fit.stdout.contains("krull estimate: 1"), "{}", fit.stdout);
    let fit = cli(dir.path(), &["fit", "--json"], "1\n0\n2\n1\n3\n");
    assert_eq!(fit.code, 0);
    assert!(fit.stdout.contains("\"fit\":null"), "{}", fit.stdout);
}

#[test]
fn fit_reads_files() {
    let dir = cache();
    let input = dir.path().join("values.txt");
    std::fs::write(&input, "1\n2\n3\n4\n5\n").unwrap();
    let out = cli(dir.path(), &["fit", "--input", input.to_str().unwrap(), "--json"], "");
    assert_eq!(out.code, 0, "{}", out.stderr);
    let doc = validate(FIT_SCHEMA, &out.stdout).unwrap();
    assert_eq!(doc["fit"]["components"], serde_json::json!([["1", "1"]]));
    assert_eq!(doc["reciprocity_violations"], serde_json::json!([]));
}

#[test]
fn help_exits_zero() {
    let out = cli(cache().path(), &["--help"], "");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("stable-check"));
}
