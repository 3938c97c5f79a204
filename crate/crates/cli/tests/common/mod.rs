//! Helpers shared by the CLI test targets.
#![allow(dead_code)]

use std::path::Path;

use kronstab_cli::{run, Outcome};
use serde_json::Value;

pub const SEQUENCE_SCHEMA: &str = include_str!("../../schemas/sequence.schema.json");
pub const FIT_SCHEMA: &str = include_str!("../../schemas/fit.schema.json");
pub const REPORT_SCHEMA: &str = include_str!("../../schemas/report.schema.json");

/// Runs the CLI in-process with `cache` as its cache directory.
pub fn cli(cache: &Path, args: &[&str], stdin: &str) -> Outcome {
    let mut argv = vec!["kron-stab".to_string(), "--cache-dir".into(), cache.display().to_string()];
    argv.extend(args.iter().map(|a| a.to_string()));
    run(argv, &mut stdin.as_bytes())
}

pub fn expect_code(out: &Outcome, code: i32, what: &str) -> Result<(), String> {
    if out.code == code {
        Ok(())
    } else {
        Err(format!(
            "{what}: exit {} (expected {code}); stdout {:?}; stderr {:?}",
            out.code, out.stdout, out.stderr
        ))
    }
}

/// Parses `text` and validates it against `schema`.
pub fn validate(schema: &str, text: &str) -> Result<Value, String> {
    let schema: Value = serde_json::from_str(schema).map_err(|e| format!("bad schema: {e}"))?;
    let validator = jsonschema::validator_for(&schema).map_err(|e| format!("bad schema: {e}"))?;
    let doc: Value = serde_json::from_str(text).map_err(|e| format!("not JSON: {e}: {text}"))?;
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
    if errors.is_empty() {
        Ok(doc)
    } else {
        Err(format!("{text} violates the schema: {}", errors.join("; ")))
    }
}

/// Invocations covering every subcommand and both parallel code paths.
pub const DETERMINISM_CASES: &[&[&str]] = &[
    &["kron", "4,2", "4,2", "4,2"],
    &["lr", "4,3,2,1", "3,2,1", "2,1,1"],
    &["pleth", "3", "2", "4,2"],
    &["char", "5,3,1", "3,3,2,1"],
    &["chartable", "8", "--json"],
    &["chartable", "6", "--csv"],
    &["seq", "--kind", "kron", "--base", "6,6", "7,5", "6,4,2", "--dmax", "2", "--json"],
    &["seq", "--kind", "pleth", "--base", "2", "2", "2,2", "--dmax", "4"],
    &["stable-check", "--kind", "kron", "2,1", "2,1", "2,1", "--dmax", "4", "--json"],
    &["stable-check", "--kind", "kron", "1", "1", "1", "--shift", "2", "1,1", "2", "--dmax", "8", "--csv"],
    &["verify-sw", "2,1,1", "2", "3", "--json"],
];

/// Repeated runs and different thread counts give byte-identical stdout.
pub fn check_determinism(cache: &Path) -> Result<(), String> {
    for case in DETERMINISM_CASES {
        let mut outputs = Vec::new();
        for threads in ["1", "1", "4", "2"] {
            let mut args = vec!["--threads", threads];
            args.extend_from_slice(case);
            let out = cli(cache, &args, "");
            expect_code(&out, 0, &case.join(" "))?;
            outputs.push(out.stdout);
        }
        if outputs.iter().any(|o| *o != outputs[0]) {
            return Err(format!("`{}` is not deterministic", case.join(" ")));
        }
    }
    Ok(())
}

/// A cold run writes the cache file; a warm run reads it and prints the
/// same bytes; `cache clear` removes it.
pub fn check_cache_round_trip(cache: &Path) -> Result<(), String> {
    let file = cache.join("sn_chars_v1_n07.jsonl");
    let cold = cli(cache, &["chartable", "7", "--json"], "");
    expect_code(&cold, 0, "cold chartable")?;
    let written = std::fs::read_to_string(&file).map_err(|e| format!("cache file missing: {e}"))?;
    let warm = cli(cache, &["chartable", "7", "--json"], "");
    expect_code(&warm, 0, "warm chartable")?;
    if cold.stdout != warm.stdout {
        return Err("warm output differs from cold output".into());
    }
    let uncached = cli(cache, &["--no-cache", "chartable", "7", "--json"], "");
    if uncached.stdout != cold.stdout {
        return Err("--no-cache output differs".into());
    }
    if std::fs::read_to_string(&file).map_err(|e| e.to_string())? != written {
        return Err("warm run rewrote the cache file".into());
    }
    let header = written.lines().next().unwrap_or_default();
    if header != r#"{"format":"kron-stab-chars","version":1,"n":7,"class_order":"revlex"}"# {
        return Err(format!("unexpected header {header}"));
    }
    let cleared = cli(cache, &["cache", "clear"], "");
    expect_code(&cleared, 0, "cache clear")?;
    if file.exists() {
        return Err("cache clear left the file behind".into());
    }
    let path = cli(cache, &["cache", "path"], "");
    if path.stdout.trim() != cache.display().to_string() {
        return Err(format!("cache path printed {:?}", path.stdout));
    }
    Ok(())
}

/// Exit codes 0 (success), 1 (usage or parse), 2 (refusal), 3 (integrity).
pub fn check_exit_codes(cache: &Path) -> Result<(), String> {
    let ok = cli(cache, &["kron", "2,1", "2,1", "2,1"], "");
    expect_code(&ok, 0, "kron 2,1 2,1 2,1")?;
    if ok.stdout != "1\n" {
        return Err(format!("kron 2,1 2,1 2,1 printed {:?}", ok.stdout));
    }
    let stable = cli(cache, &["stable-check", "--kind", "kron", "3", "3", "1,1,1", "--dmax", "4"], "");
    expect_code(&stable, 0, "stable-check (3) (3) (1,1,1)")?;
    if !stable.stdout.contains("NotStable (g_base = 0") {
        return Err(format!("unexpected verdict text {:?}", stable.stdout));
    }

    let mismatch = cli(cache, &["kron", "2,1", "2,1", "2"], "");
    expect_code(&mismatch, 1, "size mismatch")?;
    let malformed = cli(cache, &["kron", "2,1", "1,2", "2,1"], "");
    expect_code(&malformed, 1, "increasing partition")?;
    if !malformed.stderr.contains("1,2") {
        return Err(format!("parse error does not name the token: {:?}", malformed.stderr));
    }
    expect_code(&cli(cache, &["frobnicate"], ""), 1, "unknown subcommand")?;
    expect_code(&cli(cache, &["fit"], "1\nx\n"), 1, "bad fit input")?;

    let refused = cli(cache, &["--rank-cap", "10", "kron", "11", "11", "11"], "");
    expect_code(&refused, 2, "rank cap")?;
    let too_long = cli(cache, &["seq", "--kind", "kron", "--base", "6,6", "7,5", "6,4,2", "--dmax", "6"], "");
    expect_code(&too_long, 2, "sequence cap")?;
    if !too_long.stderr.contains("largest admissible dmax is 5") {
        return Err(format!("refusal lacks the dmax hint: {:?}", too_long.stderr));
    }

    // a tampered (but well-formed) cached table makes the class sum non-integral
    let tampered = cache.join("tampered");
    std::fs::create_dir_all(&tampered).map_err(|e| e.to_string())?;
    std::fs::write(
        tampered.join("sn_chars_v1_n03.jsonl"),
        concat!(
            r#"{"format":"kron-stab-chars","version":1,"n":3,"class_order":"revlex"}"#, "\n",
            r#"{"lambda":[3],"values":["1","1","1"]}"#, "\n",
            r#"{"lambda":[2,1],"values":["0","0","2"]}"#, "\n",
            r#"{"lambda":[1,1,1],"values":["1","-1","1"]}"#, "\n",
        ),
    )
    .map_err(|e| e.to_string())?;
    let broken = cli(&tampered, &["kron", "2,1", "2,1", "2,1"], "");
    expect_code(&broken, 3, "tampered cache")?;
    Ok(())
}

/// seq, fit and stable-check JSON validate against their schemas, and
/// `seq --json | fit --json-in` carries the values through.
pub fn check_schemas(cache: &Path) -> Result<(), String> {
    let seq = cli(cache, &["seq", "--kind", "kron", "--base", "6,6", "7,5", "6,4,2", "--dmax", "3", "--json"], "");
    expect_code(&seq, 0, "seq")?;
    let seq_doc = validate(SEQUENCE_SCHEMA, &seq.stdout)?;
    let lr_seq = cli(cache, &["seq", "--kind", "lr", "--base", "2,1", "1", "1,1", "--shift", "1", "-", "1", "--dmax", "3", "--json"], "");
    validate(SEQUENCE_SCHEMA, &lr_seq.stdout)?;

    let fit = cli(cache, &["fit", "--json-in", "--json"], &seq.stdout);
    expect_code(&fit, 0, "fit --json-in")?;
    let fit_doc = validate(FIT_SCHEMA, &fit.stdout)?;
    if fit_doc["values"] != seq_doc["values"] {
        return Err(format!("round trip changed values: {} vs {}", fit_doc["values"], seq_doc["values"]));
    }
    let good_fit = cli(cache, &["fit", "--json"], "1\n0\n2\n1\n3\n2\n4\n");
    let good = validate(FIT_SCHEMA, &good_fit.stdout)?;
    if good["fit"]["period"] != 2 {
        return Err(format!("unexpected fit {}", good_fit.stdout));
    }

    for args in [
        &["stable-check", "--kind", "kron", "2,1", "2,1", "2,1", "--dmax", "4", "--json"][..],
        &["stable-check", "--kind", "kron", "1", "1", "1", "--shift", "1", "1", "1", "--dmax", "6", "--json"][..],
        &["stable-check", "--kind", "lr", "3,2,1", "2,1", "2,1", "--json"][..],
        &["stable-check", "--kind", "pleth", "2", "2", "2,2", "--json"][..],
    ] {
        let out = cli(cache, args, "");
        expect_code(&out, 0, &args.join(" "))?;
        validate(REPORT_SCHEMA, &out.stdout)?;
    }

    // the schemas reject malformed documents
    if validate(SEQUENCE_SCHEMA, r#"{"kind":"kronecker","base":[[1]],"shift":[[],[],[]],"dmax":0,"values":[1]}"#).is_ok() {
        return Err("sequence schema accepted a one-partition base".into());
    }
    if validate(REPORT_SCHEMA, r#"{"verdict":{"type":"maybe"}}"#).is_ok() {
        return Err("report schema accepted an unknown verdict".into());
    }
    Ok(())
}
