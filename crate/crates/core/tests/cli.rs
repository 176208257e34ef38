use std::path::Path;
use std::process::Command;

use qes::cli::run;
use serde_json::Value;

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schema/qes-output.schema.json");
    let text = std::fs::read_to_string(path).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn call(args: &[&str]) -> (i32, Value) {
    let out = run(std::iter::once("qes").chain(args.iter().copied()));
    let doc: Value = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout));
    let validator = schema();
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "schema violations for {args:?}: {errors:#?}");
    (out.code, doc)
}

const PT: [&str; 12] = ["--family", "poschl-teller", "--L", "1", "--A", "2", "--q", "0.5", "--alpha", "1", "--twoj", "2"];

#[test]
fn spectrum_example() {
    let mut args = vec!["spectrum"];
    args.extend(PT);
    let (code, doc) = call(&args);
    assert_eq!(code, 0);
    assert_eq!(doc["command"], "spectrum");
    let roots = doc["results"]["lambda_roots"].as_array().unwrap();
    let energies = doc["results"]["energies"].as_array().unwrap();
    assert_eq!(roots.len(), 3);
    assert_eq!(energies.len(), 3);

    let p = qes::PoschlTellerParams::new(1.0, 2.0, 0.5, 1.0, qes::TwoJ(2)).unwrap();
    let sol = qes::spectra::lambda_spectrum_roots(&qes::PotentialFamily::PoschlTeller(p), qes::Precision::Double)
        .unwrap();
    for (r, e) in roots.iter().zip(&sol.lambda_roots) {
        assert_eq!(r.as_f64().unwrap(), *e);
    }
}

#[test]
fn spectrum_tridiagonal_matches_roots() {
    let mut a = vec!["spectrum"];
    a.extend(PT);
    let mut b = a.clone();
    b.extend(["--method", "tridiagonal"]);
    let (_, x) = call(&a);
    let (_, y) = call(&b);
    assert_eq!(y["results"]["method"], "tridiagonal");
    for (u, v) in x["results"]["lambda_roots"].as_array().unwrap().iter().zip(y["results"]["lambda_roots"].as_array().unwrap()) {
        assert!((u.as_f64().unwrap() - v.as_f64().unwrap()).abs() < 1e-8);
    }
}

#[test]
fn polytable_sextic_p4_constant() {
    let (code, doc) = call(&["polytable", "--family", "sextic", "--twoj", "3", "--b", "1", "--qa2", "1", "--L", "0"]);
    assert_eq!(code, 0);
    let polys = doc["results"]["polynomials"].as_array().unwrap();
    assert_eq!(polys.len(), 5);
    let c0 = polys[4]["coefficients"][0].as_f64().unwrap();
    assert!((c0 - 20.25).abs() < 1e-12, "{c0}");
}

#[test]
fn output_is_deterministic() {
    let args = ["spectrum", "--family", "sextic", "--L", "0.5", "--b", "1", "--a", "1", "--q", "0.3", "--twoj", "4"];
    let a = run(std::iter::once("qes").chain(args));
    let b = run(std::iter::once("qes").chain(args));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn every_command_validates() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["spectrum", "--family", "pt-anharmonic", "--b", "1", "--a", "1", "--q", "0.3", "--ell", "0.4", "--twoj", "2"],
        vec!["spectrum", "--family", "scarf-pt", "--L", "1", "--A", "3", "--q", "0.4", "--alpha", "1", "--twoj", "1", "--precision", "extended"],
        vec!["polytable", "--family", "generalized-pt", "--L", "1", "--A", "3", "--q", "0.4", "--alpha", "1", "--twoj", "2", "--upto", "2"],
        vec!["wavefunction", "--family", "sextic", "--L", "0", "--b", "1", "--a", "1", "--q", "0.3", "--twoj", "1", "--points", "5"],
        vec!["wavefunction", "--family", "scarf-pt", "--L", "1", "--A", "3", "--q", "0.4", "--alpha", "1", "--twoj", "1", "--x-min", "-2", "--x-max", "2", "--points", "7"],
        vec!["transform-check", "--family", "scarf-pt", "--L", "1", "--A", "3", "--q", "0.4", "--alpha", "1", "--twoj", "1", "--samples", "5"],
        vec!["verify", "--family", "sextic", "--L", "0", "--b", "1", "--a", "1", "--q", "0.3", "--twoj", "1"],
        vec!["verify", "--family", "poschl-teller", "--L", "1", "--A", "4", "--q", "0.3", "--alpha", "1", "--twoj", "1", "--mode", "fd", "--points", "1001"],
        vec!["verify", "--family", "sextic", "--L", "0", "--b", "1", "--a", "1", "--q", "0.3", "--twoj", "1", "--mode", "limit"],
        vec!["verify", "--family", "pt-anharmonic", "--b", "1", "--a", "1", "--q", "0.3", "--ell", "0.4", "--twoj", "1", "--mode", "limit"],
    ];
    for args in cases {
        let (code, doc) = call(&args);
        assert_eq!(code, 0, "{args:?}: {doc}");
        assert!(doc.get("error").is_none());
    }
}

#[test]
fn validation_error_exits_one() {
    let (code, doc) = call(&["spectrum", "--family", "poschl-teller", "--L", "1", "--A", "2", "--q", "0.5", "--alpha", "-1", "--twoj", "2"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "invalid-parameter");
    assert!(doc["results"].is_null());
}

#[test]
fn degenerate_parameters_exit_one() {
    let (code, doc) = call(&["spectrum", "--family", "sextic", "--L", "0", "--b", "1", "--a", "1", "--q", "0", "--twoj", "2"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "degenerate-parameters");
}

#[test]
fn numerical_failure_exits_two() {
    // A grid this coarse cannot meet the two-grid convergence test.
    let (code, doc) = call(&[
        "verify", "--family", "poschl-teller", "--L", "1", "--A", "4", "--q", "0.3", "--alpha", "1", "--twoj", "1", "--mode", "fd",
        "--points", "64", "--tolerance", "1e-12",
    ]);
    assert_eq!(code, 2, "{doc}");
    assert_eq!(doc["error"]["kind"], "not-converged");
}

#[test]
fn complex_family_rejected_by_fd() {
    let (code, doc) = call(&["verify", "--family", "scarf-pt", "--L", "1", "--A", "3", "--q", "0.4", "--alpha", "1", "--twoj", "1", "--mode", "fd"]);
    assert_ne!(code, 0);
    assert_eq!(doc["error"]["kind"], "complex-potential");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = run(["qes", "spectrum", "--bogus"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    assert_eq!(run(["qes", "--help"]).code, 0);
}

#[test]
fn wavefunction_csv_layout() {
    let out = run([
        "qes", "wavefunction", "--family", "sextic", "--L", "0", "--b", "1", "--a", "1", "--q", "0", "--twoj", "0", "--x-min", "0.5",
        "--x-max", "1.5", "--points", "3", "--format", "csv",
    ]);
    assert_eq!(out.code, 0);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("x,re_psi,im_psi,v_re,v_im"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert_eq!(r.len(), 5);
        let x = r[0];
        assert!((r[1] - x * (-x * x / 2.0).exp()).abs() < 1e-14);
        assert!((r[3] - x * x).abs() < 1e-12);
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spectrum.json");
    let mut args = vec!["qes", "spectrum", "--out", path.to_str().unwrap()];
    args.extend(PT);
    let out = run(args);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(schema().is_valid(&doc));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qes");
    let ok = Command::new(bin).args(["polytable", "--family", "sextic", "--twoj", "1", "--b", "1", "--qa2", "1", "--L", "0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert!(schema().is_valid(&doc));
    let bad = Command::new(bin).args(["spectrum", "--family", "nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
