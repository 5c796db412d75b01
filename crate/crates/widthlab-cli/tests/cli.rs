//! Binary-level behavior: exit codes, report schema, flag handling.

use std::path::Path;
use std::process::{Command, Output};

fn widthlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_widthlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn verify_a5_passes_quickly() {
    let out = widthlab(&["verify-a5"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("command: verify-a5"));
    assert!(text.contains("PASS"));
    assert!(text.contains("summary: 3 passed, 0 failed, 0 skipped"));
}

#[test]
fn certify_gn_reports_exact_width_two() {
    let out = widthlab(&["certify", "gn"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("exact-width"));
    assert!(text.contains("exactly 2"));
}

#[test]
fn certify_pn_namespaces_both_batteries() {
    let out = widthlab(&["certify", "pn"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("gn/exact-width"));
    assert!(text.contains("mn/mn-generated-by-commutators"));
}

#[test]
fn incompatible_modulus_is_a_usage_error() {
    // gcd(m, q) must be 1 and p ≠ q; both violations exit 2.
    for args in [
        &["certify", "mn", "--m", "10", "--q", "5"][..],
        &["certify", "gn", "--m", "10", "--q", "5"][..],
        &["certify", "mn", "--q", "3"][..], // default m = 3 collides with q
        &["certify", "pn", "--p", "4"][..], // p must be a prime ≥ 5
    ] {
        let out = widthlab(args);
        assert_eq!(exit_code(&out), 2, "args {args:?}");
    }
}

#[test]
fn certify_gn_defaults_m_to_one() {
    // Without an explicit --m, the gn target must not trip over gcd(3, q).
    let out = widthlab(&["certify", "gn", "--q", "3"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("m=1"));
}

#[test]
fn malformed_flags_exit_two() {
    for args in [
        &["--bogus"][..],
        &["frobnicate"][..],
        &["certify"][..],            // missing target
        &["certify", "qq"][..],      // unknown target
        &["certify", "gn", "--p", "notanumber"][..],
        &[][..],                     // missing subcommand
    ] {
        let out = widthlab(args);
        assert_eq!(exit_code(&out), 2, "args {args:?}");
    }
}

#[test]
fn analyze_requires_a_parsable_group() {
    let out = widthlab(&["analyze"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--group"));
    let out = widthlab(&["analyze", "--group", "nope"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn analyze_reports_structure_facts() {
    let out = widthlab(&["analyze", "--group", "s5"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("predicate-almost-simple"));
    assert!(text.contains("predicate-perfect"));
    // S5 is almost simple but not perfect.
    for line in text.lines() {
        if line.contains("predicate-almost-simple") {
            assert!(line.contains("true"), "{line}");
        }
        if line.contains("predicate-perfect ") {
            assert!(line.contains("false"), "{line}");
        }
    }
}

#[test]
fn enumeration_caps_exit_three_with_a_skip() {
    // gn(5,2,3) has order 245760, beyond the default enumeration cap.
    let out = widthlab(&["certify", "gn", "--n", "3"]);
    assert_eq!(exit_code(&out), 3);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("SKIP"));
    assert!(text.contains("0 passed, 0 failed, 1 skipped"));

    let out = widthlab(&["analyze", "--group", "gn(5,2,3)"]);
    assert_eq!(exit_code(&out), 3);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("group-built"));
}

#[test]
fn json_report_matches_the_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = widthlab(&["certify", "mn", "--json", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let obj = parsed.as_object().unwrap();
    let keys: Vec<&String> = obj.keys().collect();
    assert_eq!(keys, ["checks", "command", "params", "summary"]);
    assert_eq!(obj["command"], "certify-mn");
    assert_eq!(obj["params"]["p"], 5);
    assert_eq!(obj["params"]["m"], 3);
    let checks = obj["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    let mut passed = 0u64;
    for c in checks {
        let status = c["status"].as_str().unwrap();
        assert!(["pass", "fail", "skipped", "not-applicable"].contains(&status));
        if status == "pass" {
            passed += 1;
        }
        // Without --stable every check carries a timing figure.
        assert!(c.get("elapsed-ms").is_some());
    }
    assert_eq!(obj["summary"]["passed"], passed);
}

#[test]
fn stable_reports_are_reproducible_and_timing_free() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = widthlab(&[
            "certify",
            "duality",
            "--stable",
            "--seed",
            "9",
            "--json",
            path.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&out), 0);
    }
    let text_a = std::fs::read_to_string(&a).unwrap();
    let text_b = std::fs::read_to_string(&b).unwrap();
    assert_eq!(text_a, text_b, "stable runs must serialize identically");
    assert!(!text_a.contains("elapsed-ms"));
}

#[test]
fn json_write_failure_is_a_usage_error() {
    let out = widthlab(&["verify-a5", "--json", "/nonexistent-dir/report.json"]);
    assert_eq!(exit_code(&out), 2);
    assert!(!Path::new("/nonexistent-dir").exists());
}

#[test]
fn suite_passes_with_default_parameters() {
    let out = widthlab(&["suite", "--samples", "50"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    for prefix in ["a5/", "gn(5,2,1)/", "gn(5,3,1)/", "bf(2,3)/", "bf(5,6)/", "mn(5,2,3,1)/", "avm(5,3,2,1)/", "mg(5,2,1)/", "duality(5,2,3,1)/", "duality(5,2,3,2)/", "classify/"] {
        assert!(text.contains(prefix), "missing battery {prefix} in suite output");
    }
    assert!(text.contains("0 failed"));
}
