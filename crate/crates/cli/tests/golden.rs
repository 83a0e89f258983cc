//! Golden reports for the bundled manifests, byte for byte apart from
//! `timing_ms`. `UPDATE_GOLDEN=1` rewrites them.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_locdual");

/// (case name, manifest, subcommand, expected exit code)
const CASES: &[(&str, &str, &str, i32)] = &[
    ("classify_z5", "classify_z5", "classify", 0),
    ("spectrum_z5", "classify_z5", "spectrum", 0),
    ("classify_qxy_x", "classify_qxy_x", "classify", 0),
    ("spectrum_qxy_x", "classify_qxy_x", "spectrum", 0),
    (
        "classify_dual_numbers",
        "classify_dual_numbers",
        "classify",
        0,
    ),
    (
        "spectrum_dual_numbers",
        "classify_dual_numbers",
        "spectrum",
        0,
    ),
    ("classify_invariants", "classify_invariants", "classify", 0),
    ("betti_z5", "betti_z5", "betti", 0),
    ("homology_qxy", "homology_qxy", "homology", 0),
    ("tensor_z5", "tensor_z5", "tensor", 0),
    ("dual_qx", "dual_qx", "dual", 0),
    ("gm_check_invariants", "gm_check_invariants", "gm-check", 0),
    ("hensel_nodal", "hensel_nodal", "hensel", 0),
    ("hensel_literal", "hensel_literal", "hensel", 3),
    ("kproj_dual_numbers", "kproj_dual_numbers", "kproj-demo", 0),
];

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exited"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn report(manifest: &Path, command: &str, extra: &[&str]) -> (i32, Value) {
    let mut args = vec![command, "--json", "--manifest", manifest.to_str().unwrap()];
    args.extend_from_slice(extra);
    let (code, stdout, stderr) = run(&args);
    let mut v: Value =
        serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{command}: {e}\n{stderr}"));
    assert!(v["timing_ms"].as_f64().is_some());
    v.as_object_mut().unwrap().remove("timing_ms");
    (code, v)
}

#[test]
fn golden_reports() {
    let dir = golden_dir();
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for &(case, manifest, command, exit) in CASES {
        let (code, got) = report(&dir.join(format!("{manifest}.json")), command, &[]);
        assert_eq!(code, exit, "{case}: exit code");
        let path = dir.join("expected").join(format!("{case}.json"));
        if update {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, serde_json::to_string_pretty(&got).unwrap() + "\n").unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path)
            .unwrap_or_else(|_| panic!("{case}: no golden file; run with UPDATE_GOLDEN=1"));
        let got = serde_json::to_string_pretty(&got).unwrap() + "\n";
        assert!(
            got == want,
            "{case}: report differs from {}\n{got}",
            path.display()
        );
    }
}

#[test]
fn reports_replay_from_their_own_manifest() {
    let dir = golden_dir();
    let tmp = std::env::temp_dir().join(format!("locdual-replay-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    for &(case, manifest, command, exit) in CASES {
        let (_, first) = report(
            &dir.join(format!("{manifest}.json")),
            command,
            &["--cutoff", "6"],
        );
        let echoed = tmp.join(format!("{case}.json"));
        std::fs::write(&echoed, serde_json::to_string(&first["manifest"]).unwrap()).unwrap();
        let (code, second) = report(&echoed, command, &[]);
        assert_eq!(code, exit, "{case}");
        assert_eq!(first["results"], second["results"], "{case}");
        assert_eq!(second["manifest"]["params"]["cutoff"], 6, "{case}");
    }
    std::fs::remove_dir_all(&tmp).unwrap();
}

#[test]
fn unknown_at_cutoff_exits_with_two() {
    let m = golden_dir().join("classify_dual_numbers.json");
    let (code, v) = report(&m, "classify", &["--cutoff", "0"]);
    assert_eq!(code, 2);
    assert_eq!(v["results"]["k"]["class"], "unknown");
    let (code, stdout, _) = run(&["betti", "--manifest", m.to_str().unwrap(), "--cutoff", "0"]);
    assert_eq!(code, 2);
    assert!(stdout.contains("unknown at cutoff 0"), "{stdout}");
}

#[test]
fn malformed_manifest_names_the_offending_field() {
    let tmp = std::env::temp_dir().join(format!("locdual-bad-{}.json", std::process::id()));
    std::fs::write(
        &tmp,
        r#"{"ring":{"type":"integers"},"prime":["5"],"objects":{"X":{"carrier":[{"cyclic":{"ideal":["25"],"degre":1}}]}}}"#,
    )
    .unwrap();
    let (code, _, stderr) = run(&["classify", "--manifest", tmp.to_str().unwrap()]);
    std::fs::remove_file(&tmp).unwrap();
    assert_eq!(code, 1);
    assert!(
        stderr.contains("objects.X.carrier[0].cyclic.degre"),
        "{stderr}"
    );
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(run(&["classify"]).0, 1);
    assert_eq!(run(&["laws", "run", "--suite", "nope"]).0, 1);
    let m = golden_dir().join("classify_z5.json");
    assert_eq!(run(&["hensel", "--manifest", m.to_str().unwrap()]).0, 1);
    assert_eq!(run(&["tensor", "--manifest", m.to_str().unwrap()]).0, 1);
}

#[test]
fn laws_suite_runs_from_the_command_line() {
    let (code, stdout, _) = run(&["laws", "run", "--suite", "gm", "--seed", "3", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["manifest"]["params"]["seed"], 3);
    assert_eq!(v["results"]["suites"][0]["failed"], 0);
}

#[test]
fn text_output_for_hensel_lists_both_factors() {
    let m = golden_dir().join("hensel_nodal.json");
    let (code, stdout, _) = run(&[
        "hensel",
        "--manifest",
        m.to_str().unwrap(),
        "--precision",
        "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout.trim(),
        "x^2 - (y^3 + y^2) = (x - (y + 1/2*y^2)) (x + (y + 1/2*y^2)) mod degree 4"
    );
}
