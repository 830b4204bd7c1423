//! Exit-code contract and output determinism of the command-line interface.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_x1curve"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn exit_zero_on_verified_claims() {
    let out = run(&[
        "all",
        "--p",
        "5",
        "--order",
        "15",
        "--max-degree",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("16/16 claims verified"));
}

#[test]
fn exit_two_on_config_errors() {
    // 4 is not prime
    assert_eq!(run(&["verify-ideal", "--p", "4"]).status.code(), Some(2));
    // missing required flag / unknown subcommand are clap errors, also 2
    assert_eq!(run(&["verify-ideal"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate", "--p", "5"]).status.code(), Some(2));
    // out-of-range cusp index
    assert_eq!(
        run(&["hilbert", "--p", "5", "--max-degree", "1", "--at", "99"])
            .status
            .code(),
        Some(2)
    );
    // nonsense orders
    assert_eq!(
        run(&["series", "--p", "5", "--order", "0"]).status.code(),
        Some(2)
    );
    // tau outside the upper half plane
    assert_eq!(
        run(&["tangent", "--p", "5", "--tau", "-2i"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_and_kappa_outputs() {
    let out = run(&["verify-ideal", "--p", "5", "--order", "12"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["kappa", "--p", "5", "--order", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("kappa = 6"));
}

#[test]
fn export_is_deterministic_and_parses() {
    let a = run(&["export", "--p", "5", "--order", "12"]);
    let b = run(&["export", "--p", "5", "--order", "12"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "byte-identical JSON export");

    let (doc, polys) =
        x1curve::export::parse_document(&String::from_utf8(a.stdout).unwrap()).unwrap();
    assert_eq!(doc.p, 5);
    assert_eq!(doc.weighted_generators.len(), 4);
    assert_eq!(polys.len(), 8);

    let cas = run(&["export", "--p", "7", "--order", "12", "--format", "cas"]);
    let text = String::from_utf8_lossy(&cas.stdout);
    assert_eq!(text.lines().filter(|l| l.starts_with("q_")).count(), 8);
}

#[test]
fn report_json_is_deterministic() {
    let args = [
        "all",
        "--p",
        "5",
        "--order",
        "15",
        "--max-degree",
        "1",
        "--seed",
        "7",
        "--json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "byte-identical report JSON");
    let reports: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(reports.as_array().unwrap().len() >= 16);
}

#[test]
fn series_json_has_expected_shape() {
    let out = run(&["series", "--p", "5", "--order", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["p"], 5);
    assert_eq!(doc["s"].as_array().unwrap().len(), 4);
    assert_eq!(doc["s"][0]["var"], "q");
    assert_eq!(doc["t"][0]["coeffs"][0]["p"], 5);
}
