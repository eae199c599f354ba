//! Exit codes, report shapes, and format round-trips through the binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn staplekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_staplekit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("staplekit-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn alex_trefoil_report() {
    let out = staplekit(&["alex", "builtin:trefoil"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["delta"]["min_exp"], 0);
    assert_eq!(json["delta"]["coeffs"], serde_json::json!(["1", "-1", "1"]));
}

#[test]
fn alex_rejects_links() {
    let out = staplekit(&["alex", "builtin:hopf"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("select the knot component"), "{msg}");
}

#[test]
fn cover_arity_error_is_input_error() {
    let out = staplekit(&["cover", "builtin:trefoil", "--q", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cover_identity_and_all_ones_pass() {
    let out = staplekit(&[
        "cover",
        "builtin:trefoil",
        "--q",
        "0,0,0",
        "--quotients",
        "S3",
        "--no-stages",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = staplekit(&[
        "cover",
        "builtin:trefoil",
        "--q",
        "1,1,1",
        "--quotients",
        "S3,D5",
        "--no-stages",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["verified"], true);
    assert_eq!(json["cover_crossings"], 39);
    assert_eq!(json["certificate"]["alexander"]["equal_up_to_units"], true);
}

#[test]
fn cover_records_are_deterministic() {
    let a = tmp("cover-a.json");
    let b = tmp("cover-b.json");
    for path in [&a, &b] {
        let out = staplekit(&[
            "cover",
            "builtin:trefoil",
            "--q",
            "1,1,1",
            "--quotients",
            "S3",
            "--ribbon",
            "--seed",
            "0",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert_eq!(bytes_a, bytes_b, "two runs must emit identical bytes");
    std::fs::remove_file(a).ok();
    std::fs::remove_file(b).ok();
}

#[test]
fn amplify_exit_codes() {
    let out = staplekit(&["amplify", "builtin:trefoil", "--k0", "builtin:trefoil"]);
    assert_eq!(
        out.status.code(),
        Some(1),
        "nontrivial summand is a failed check"
    );

    let out = staplekit(&[
        "amplify",
        "builtin:trefoil",
        "--k0",
        "builtin:double(trefoil)",
        "--n",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["delta_preserved"], true);

    let out = staplekit(&[
        "amplify",
        "builtin:trefoil",
        "--k0",
        "builtin:double(trefoil)",
        "--n",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["crossings"], 3);
}

#[test]
fn ribbon_command_passes() {
    let out = staplekit(&["ribbon", "builtin:trefoil", "--q", "1,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["verified"], true);
    assert_eq!(json["residual_circles"], 2);
}

#[test]
fn export_dt_trefoil() {
    let out = staplekit(&["export", "builtin:trefoil", "--format", "dt"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "4 6 2\n");
}

#[test]
fn export_gauss_roundtrip() {
    let g = tmp("trefoil.gauss");
    let out = staplekit(&[
        "export",
        "builtin:trefoil",
        "--format",
        "gauss",
        "--out",
        g.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    // re-import the gauss file and export pd; compare with direct pd export
    let back = staplekit(&["export", g.to_str().unwrap(), "--format", "pd"]);
    assert_eq!(back.status.code(), Some(0));
    let direct = staplekit(&["export", "builtin:trefoil", "--format", "pd"]);
    assert_eq!(
        back.stdout, direct.stdout,
        "pd -> gauss -> pd must be canonical-identical"
    );
    std::fs::remove_file(g).ok();
}

#[test]
fn export_dt_staple_link_multiline() {
    let pd = tmp("stapled.json");
    let out = staplekit(&["staple", "builtin:trefoil", "--out", pd.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&pd).unwrap()).unwrap();
    let link_pd = tmp("stapled.pd");
    std::fs::write(&link_pd, json["pd"].as_str().unwrap()).unwrap();
    let out = staplekit(&["export", link_pd.to_str().unwrap(), "--format", "dt"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(
        text.lines().count(),
        4,
        "one DT line per component:\n{text}"
    );
    std::fs::remove_file(pd).ok();
    std::fs::remove_file(link_pd).ok();
}

#[test]
fn verify_fixture_gate_and_mutants() {
    let out = staplekit(&["verify-fixture"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["passed"], true);

    let out = staplekit(&["verify-fixture", "--fixture", "hook"]);
    assert_eq!(
        out.status.code(),
        Some(1),
        "hook fixture fails the class gate"
    );
}

#[test]
fn epi_check_record_roundtrip() {
    let rec = tmp("record.json");
    let out = staplekit(&[
        "cover",
        "builtin:figure8",
        "--q",
        "1,0,0,0",
        "--quotients",
        "S3",
        "--no-stages",
        "--out",
        rec.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = staplekit(&[
        "epi-check",
        rec.to_str().unwrap(),
        "--record",
        "--quotients",
        "S3,S4",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    std::fs::remove_file(rec).ok();
}

#[test]
fn unknown_file_is_input_error() {
    let out = staplekit(&["alex", "/nonexistent/knot.pd"]);
    assert_eq!(out.status.code(), Some(2));
}
