//! End-to-end checks of the binary: exit codes, structured-report
//! round-trips, and the deterministic oracle fault hook.

use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

use torsion_bounds_cli::report::{RunReport, MODULI_VERSION};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_torsion-bounds"))
}

fn spec_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f.flush().unwrap();
    f
}

/// Two short-form curves sharing exactly x = 0 and infinity as common
/// projective torsion images up to order 2.
const DEMO_PAIR: &str = "\
# demo pair
E1 0 0 0 -1 0
E2 0 0 0 -4 0
";

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn classify_reports_reduction_tags() {
    let f = spec_file(DEMO_PAIR);
    let out = bin()
        .args(["classify", "--spec"])
        .arg(f.path())
        .args(["--p", "5", "--format", "structured"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stdout(&out));
    let rep = RunReport::parse(&stdout(&out)).unwrap();
    assert_eq!(rep.command, "classify");
    assert_eq!(rep.moduli_version, MODULI_VERSION);
    let tags: Vec<&str> = rep
        .results
        .iter()
        .filter(|(k, _)| k.ends_with(".tag"))
        .map(|(_, v)| v.as_str())
        .collect();
    assert_eq!(tags, ["GoodOrdinary", "GoodOrdinary"]);
}

#[test]
fn common_torsion_structured_report_round_trips() {
    let f = spec_file(DEMO_PAIR);
    let out = bin()
        .args(["common-torsion", "--spec"])
        .arg(f.path())
        .args(["--N", "2", "--aux-primes", "7,11", "--format", "structured"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    let rep = RunReport::parse(&text).unwrap();
    assert_eq!(rep.serialize(), text);
    let get = |k: &str| {
        rep.results
            .iter()
            .find(|(name, _)| name == k)
            .map(|(_, v)| v.as_str())
            .unwrap_or_else(|| panic!("missing result {k}: {text}"))
    };
    assert_eq!(get("count"), "2");
    assert_eq!(get("infinity_is_common"), "true");
    assert_eq!(get("oracle.7.count"), "2");
    assert_eq!(get("oracle.7.complete"), "true");
}

#[test]
fn oracle_fault_raises_soundness_alarm() {
    let f = spec_file(DEMO_PAIR);
    let out = bin()
        .args(["common-torsion", "--spec"])
        .arg(f.path())
        .args(["--N", "2", "--aux-primes", "7"])
        .env("TORSION_BOUNDS_FAULT", "oracle")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", stdout(&out));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("oracle mismatch"), "{err}");
}

#[test]
fn malformed_spec_is_a_spec_error() {
    let f = spec_file("E1 0 0 0 -1\n");
    let out = bin()
        .args(["classify", "--spec"])
        .arg(f.path())
        .args(["--p", "7"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("expected 6 or 10 fields"), "{err}");
}

#[test]
fn zero_denominator_is_a_spec_error() {
    let f = spec_file("E1 0 0 0 1/0 0\nE2 0 0 0 -4 0\n");
    let out = bin()
        .args(["classify", "--spec"])
        .arg(f.path())
        .args(["--p", "7"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn canonical_lift_rejects_non_ordinary_cubic() {
    // x^3 + z^3 - y^2 z is supersingular at 5
    let out = bin()
        .args([
            "canonical-lift",
            "--cubic",
            "1,0,0,0,0,0,0,-1,0,1",
            "--p",
            "5",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn frob_lift_accepts_raw_cubic() {
    let out = bin()
        .args([
            "frob-lift",
            "--cubic",
            "1,0,0,0,0,0,0,-1,0,1",
            "--p",
            "7",
            "--format",
            "structured",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stdout(&out));
    let rep = RunReport::parse(&stdout(&out)).unwrap();
    let get = |k: &str| {
        rep.results
            .iter()
            .find(|(name, _)| name == k)
            .map(|(_, v)| v.as_str())
    };
    assert_eq!(get("solvable"), Some("true"));
    assert_eq!(get("witness_verified"), Some("true"));
}

#[test]
fn bound_certifies_demo_pair() {
    let f = spec_file(DEMO_PAIR);
    let out = bin()
        .args(["bound", "--spec"])
        .arg(f.path())
        .args(["--p", "7", "--format", "structured"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stdout(&out));
    let rep = RunReport::parse(&stdout(&out)).unwrap();
    assert!(
        rep.results.iter().any(|(k, _)| k == "bound"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn witt_multiplication_kills_double_verschiebung() {
    let out = bin()
        .args(["witt", "--p", "5", "--expr", "mul (0,1) (0,1)"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("(0,0)"), "{}", stdout(&out));
}

#[test]
fn find_primes_tags_scenarios() {
    let f = spec_file(DEMO_PAIR);
    let out = bin()
        .args(["find-primes", "--spec"])
        .arg(f.path())
        .args(["--min", "5", "--max", "30", "--format", "structured"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stdout(&out));
    let rep = RunReport::parse(&stdout(&out)).unwrap();
    assert!(rep.results.iter().any(|(k, _)| k.starts_with("prime.")));
}
