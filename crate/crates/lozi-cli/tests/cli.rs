//! End-to-end tests against the compiled `lozi` binary.

use lozi_core::manifold::{unstable_arc, DEFAULT_MAX_VERTICES};
use lozi_core::Params;
use std::process::{Command, Output};

fn lozi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lozi"))
        .args(args)
        .output()
        .expect("spawn lozi")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn manifold_csv_round_trips_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("m");
    let out = lozi(&[
        "manifold", "--a", "1.46", "--b", "0.86", "--depth", "6", "--out",
        stem.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("m-unstable.csv")).unwrap();
    let mut parsed = Vec::new();
    for line in csv.lines().skip(2) {
        let f: Vec<&str> = line.split(',').collect();
        parsed.push((f[0].parse::<f64>().unwrap(), f[1].parse::<f64>().unwrap()));
    }
    let p = Params::new(1.46, 0.86).unwrap();
    let arc = unstable_arc(p, 3, DEFAULT_MAX_VERTICES).unwrap();
    let verts = arc.line().vertices();
    assert_eq!(parsed.len(), verts.len());
    for (got, want) in parsed.iter().zip(verts) {
        // 17-significant-digit serialization must reproduce the exact bits
        assert_eq!(got.0.to_bits(), want.x.to_bits());
        assert_eq!(got.1.to_bits(), want.y.to_bits());
    }
    // stable arc file exists and has the same schema
    let scsv = std::fs::read_to_string(dir.path().join("m-stable.csv")).unwrap();
    assert!(scsv.lines().nth(1).unwrap().starts_with("x,y,label,breakpoint"));
}

#[test]
fn manifold_svg_has_both_arcs() {
    let out = stdout(&lozi(&[
        "manifold", "--a", "1.46", "--b", "0.86", "--depth", "6", "--format", "svg",
    ]));
    assert!(out.starts_with("<?xml"));
    assert!(out.contains("#cc2222"), "stable arc color missing");
    assert!(out.contains("#2244cc"), "unstable arc color missing");
    assert!(out.contains(">X</text>"));
}

#[test]
fn homoclinic_reports_match_known_cells() {
    let empty = stdout(&lozi(&["homoclinic", "--a", "0.95", "--b", "0.5"]));
    let doc: serde_json::Value = serde_json::from_str(&empty).unwrap();
    assert_eq!(doc["fundamental"]["count"], 0);

    let full = stdout(&lozi(&["homoclinic", "--a", "1.7", "--b", "0.5"]));
    let doc: serde_json::Value = serde_json::from_str(&full).unwrap();
    assert!(doc["fundamental"]["count"].as_u64().unwrap() > 0);
    let kinds: Vec<&str> = doc["fundamental"]["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["kind"].as_str().unwrap())
        .collect();
    assert!(kinds.contains(&"transversal"));
}

#[test]
fn trace_is_deterministic_and_monotone() {
    let args = ["trace", "--curve", "C1", "--b-from", "0.3", "--b-to", "0.4", "--steps", "10"];
    let one = stdout(&lozi(&args));
    let two = stdout(&lozi(&args));
    assert_eq!(one, two, "identical invocations must be byte-identical");
    let mut prev = f64::NEG_INFINITY;
    for line in one.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let b: f64 = f[1].parse().unwrap();
        assert!(b > prev);
        prev = b;
        let residual: f64 = f[2].parse().unwrap();
        assert!(residual.abs() < 1e-10, "condition residual {residual}");
        let t1: f64 = f[3].parse().unwrap();
        assert!(t1.abs() < 1e-10, "table residual {t1}");
    }
}

#[test]
fn endpoints_row_matches_reference() {
    let out = stdout(&lozi(&["endpoints", "--curves", "C1"]));
    let row = out.lines().nth(1).unwrap();
    let f: Vec<&str> = row.split(',').collect();
    assert_eq!(f[0], "1");
    assert!(f[3].parse::<f64>().unwrap() < 1e-6);
    assert!(f[4].parse::<f64>().unwrap() < 1e-6);
    assert_eq!(f[5], "ok");
}

#[test]
fn scan_csv_reproduces_known_cells() {
    let out = stdout(&lozi(&[
        "scan", "--a-from", "0.95", "--a-to", "1.7", "--na", "2", "--b-from", "0.5",
        "--b-to", "0.5", "--nb", "2",
    ]));
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].ends_with(",0"), "(0.95, 0.5) is outside: {}", rows[0]);
    assert!(rows[1].ends_with(",1"), "(1.7, 0.5) is inside: {}", rows[1]);
}

#[test]
fn verify_tables_passes() {
    let out = lozi(&["verify-tables", "--steps", "51"]);
    let text = stdout(&out);
    assert!(text.contains("table 1"), "{text}");
    assert!(text.contains("table 2"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn exit_codes_distinguish_usage_and_computation() {
    // unknown flag -> usage
    assert_eq!(lozi(&["manifold", "--bogus"]).status.code(), Some(1));
    // format invalid for the command -> usage
    assert_eq!(
        lozi(&["homoclinic", "--a", "1.7", "--b", "0.5", "--format", "svg"])
            .status
            .code(),
        Some(1)
    );
    // parameters outside the admissible region -> computation error
    let out = lozi(&["manifold", "--a", "0.5", "--b", "0.4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("admissible"));
}

#[test]
fn config_file_fills_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("lozi.conf");
    std::fs::write(&cfg, "# defaults\ntol = 1e-7\ndepth = 6\n").unwrap();
    let base = ["homoclinic", "--a", "1.7", "--b", "0.5", "--config"];

    let out = stdout(&lozi(&[&base[..], &[cfg.to_str().unwrap()]].concat()));
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["tol"], 1e-7);
    assert_eq!(doc["depth"], 6);

    let out = stdout(&lozi(
        &[&base[..], &[cfg.to_str().unwrap(), "--tol", "1e-8"]].concat(),
    ));
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["tol"], 1e-8);
    assert_eq!(doc["depth"], 6);
}
