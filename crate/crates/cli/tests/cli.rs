//! End-to-end tests of the command-line interface: spec-file round trips,
//! output determinism, and the exit-code contract.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn roughlim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_roughlim"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn every_fixture_round_trips() {
    let dir = fixture("");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("seq") {
            continue;
        }
        seen += 1;
        let text = std::fs::read_to_string(&path).unwrap();
        let seq = roughlim::sexpr::parse_sequence(&text)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let printed = roughlim::sexpr::print_sequence(&seq);
        let reparsed = roughlim::sexpr::parse_sequence(&printed).unwrap();
        assert_eq!(seq, reparsed, "{} must round-trip", path.display());
        assert_eq!(printed, roughlim::sexpr::print_sequence(&reparsed));
    }
    assert!(seen >= 7, "expected the shipped fixtures, found {seen}");
}

#[test]
fn identical_configs_produce_identical_bytes() {
    let seq = fixture("example21.seq");
    let args = [
        "limitset",
        "--seq",
        seq.to_str().unwrap(),
        "--ideal",
        "density-zero",
        "--r-from",
        "0",
        "--r-to",
        "3",
        "--r-step",
        "0.5",
        "--oracle",
    ];
    let a = roughlim(&args);
    let b = roughlim(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "stable output bytes");

    // The CSV format is deterministic too.
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let a = roughlim(&csv_args);
    let b = roughlim(&csv_args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sweep_diameters_follow_the_interval_formula() {
    // diameter = 2(r−1) for r ≥ 1 on the running example.
    let seq = fixture("example21.seq");
    let out = roughlim(&[
        "limitset",
        "--seq",
        seq.to_str().unwrap(),
        "--ideal",
        "density-zero",
        "--r-from",
        "1",
        "--r-to",
        "3",
        "--r-step",
        "0.5",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let dcol = header.iter().position(|&h| h == "diameter").unwrap();
    let diameters: Vec<f64> = lines
        .map(|l| l.split(',').nth(dcol).unwrap().parse().unwrap())
        .collect();
    assert_eq!(diameters, vec![0.0, 1.0, 2.0, 3.0, 4.0]);
}

#[test]
fn exit_codes_follow_the_contract() {
    let example = fixture("example21.seq");
    let example = example.to_str().unwrap();

    // 0: success.
    let out = roughlim(&["analyze", "--seq", example, "--ideal", "density-zero"]);
    assert_eq!(out.status.code(), Some(0));

    // 2: input errors (missing file, bad ideal, invalid sequence).
    let out = roughlim(&["analyze", "--seq", "no-such-file.seq"]);
    assert_eq!(out.status.code(), Some(2));
    let out = roughlim(&["analyze", "--seq", example, "--ideal", "prime-ideal"]);
    assert_eq!(out.status.code(), Some(2));
    let invalid = fixture("invalid_divergent.seq");
    let out = roughlim(&["analyze", "--seq", invalid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // Usage errors from the argument parser are also 2.
    let out = roughlim(&["limitset", "--seq", example]);
    assert_eq!(out.status.code(), Some(2));

    // 3: undecidable region.
    let undecidable = fixture("undecidable_minsa.seq");
    let out = roughlim(&[
        "analyze",
        "--seq",
        undecidable.to_str().unwrap(),
        "--ideal",
        "minimal-sa",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // The same sequence is fine under the density ideal.
    let out = roughlim(&[
        "analyze",
        "--seq",
        undecidable.to_str().unwrap(),
        "--ideal",
        "density-zero",
    ]);
    assert_eq!(out.status.code(), Some(0));

    // 1: oracle disagreement is impossible on the shipped fixtures, but a
    // failing check is representable; verify 0 for passing checks instead
    // and 1 is covered by construction in cmd_check (any Fail outcome).
    let out = roughlim(&[
        "check", "--seq", example, "--ideal", "density-zero", "--r", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn oracle_compare_agrees_on_fixtures() {
    for (name, r) in [("example21.seq", "2"), ("constant.seq", "1"), ("example21.seq", "0.5")] {
        let seq = fixture(name);
        let out = roughlim(&[
            "oracle-compare",
            "--seq",
            seq.to_str().unwrap(),
            "--ideal",
            "density-zero",
            "--r",
            r,
        ]);
        assert_eq!(out.status.code(), Some(0), "{name} at r = {r}");
        let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(doc["results"]["agree"], serde_json::Value::Bool(true));
    }
}

#[test]
fn thread_cap_env_var_is_honored() {
    let seq = fixture("example21.seq");
    let out = Command::new(env!("CARGO_BIN_EXE_roughlim"))
        .env("ROUGHLIM_THREADS", "1")
        .args([
            "oracle-compare",
            "--seq",
            seq.to_str().unwrap(),
            "--ideal",
            "density-zero",
            "--r",
            "2",
        ])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    // Single-threaded output must match the parallel output byte for byte.
    let par = roughlim(&[
        "oracle-compare",
        "--seq",
        seq.to_str().unwrap(),
        "--ideal",
        "density-zero",
        "--r",
        "2",
    ]);
    assert_eq!(out.stdout, par.stdout);
}

#[test]
fn dim2_limitset_emits_lattice_form() {
    let seq = fixture("midpoint_euclidean.seq");
    let out = roughlim(&[
        "limitset",
        "--seq",
        seq.to_str().unwrap(),
        "--ideal",
        "density-zero",
        "--r",
        "1",
        "--lattice",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let set = &doc["results"]["sets"][0];
    assert_eq!(set["status"], "lattice");
    assert_eq!(set["balls"].as_array().unwrap().len(), 1);
    let points = set["points"].as_array().unwrap();
    assert!(!points.is_empty());
    // Every certified point lies in the single cluster ball around (1,0).
    for p in points {
        let x = p[0].as_f64().unwrap();
        let y = p[1].as_f64().unwrap();
        let dist = ((x - 1.0).powi(2) + y.powi(2)).sqrt();
        assert!(dist <= 1.0 + 1e-9, "({x}, {y}) escapes the ball");
    }
}
