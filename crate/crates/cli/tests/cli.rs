use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cproj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cproj")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check"] == name)
        .unwrap_or_else(|| panic!("no check `{name}`"))
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cproj-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn table_reproduces_closed_forms() {
    let out = cproj(&["table", "--n-min", "2", "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema"], "cproj-report/1");
    assert_eq!(r["pass"], true);
    let rows: Vec<&Value> = r["checks"].as_array().unwrap().iter().filter(|c| c["check"] == "overall submaximal dimension").collect();
    let computed: Vec<&str> = rows.iter().map(|c| c["computed"].as_str().unwrap()).collect();
    assert_eq!(computed, ["8", "18", "28"]);
    let notes = r["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("type I maximum in complex dimension 2 is 6")));
}

#[test]
fn table_rejects_out_of_range() {
    let out = cproj(&["table", "--n-min", "1", "--n-max", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n-min"));
}

#[test]
fn verify_type2_passes() {
    let out = cproj(&["verify", "--model", "type2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let dim = check(&r, "symmetry dimension");
    assert_eq!(dim["expected"], "16");
    assert_eq!(dim["computed"], "16");
    assert_eq!(dim["provenance"], "published");
}

#[test]
fn unstable_ansatz_exits_nonzero() {
    let out = cproj(&["verify", "--model", "type2", "--n", "3", "--max-degree", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(check(&r, "symmetry dimension stable under widening the ansatz")["pass"], false);
}

#[test]
fn low_dimensional_type_three_reports_scope_note() {
    let out = cproj(&["verify", "--model", "type3-n2", "--n", "2", "--no-metric"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(check(&r, "symmetry dimension")["computed"], "8");
    assert_eq!(check(&r, "torsion")["computed"], "nonzero");
    let notes = r["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("not verifiable")));
}

#[test]
fn manifest_errors_carry_positions() {
    let dir = scratch("bad");
    let path = dir.join("bad.model");
    std::fs::write(&path, "schema = cproj-model/1\nname = x\nn = 1\n[chart]\ncomplex = 1\n[gamma]\n1,1,1 = x1 + * y1\n").unwrap();
    let out = cproj(&["verify", "--manifest", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 7"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn catalog_directory_overrides_builtin() {
    let dir = scratch("catalog");
    let text = cproj_core::catalog::builtin("type2", 2).unwrap().to_manifest();
    let edited = text.replace("symmetry_dim = 8 @published", "symmetry_dim = 9 @derived");
    assert_ne!(text, edited);
    std::fs::write(dir.join("type2-n2.model"), edited).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_cproj"))
        .args(["verify", "--model", "type2", "--n", "2"])
        .env("CPROJ_CATALOG", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let dim = check(&r, "symmetry dimension");
    assert_eq!((dim["expected"].as_str(), dim["computed"].as_str()), (Some("9"), Some("8")));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn reports_are_deterministic_apart_from_timestamp() {
    let strip = |out: Output| {
        let mut r = report(&out);
        r.as_object_mut().unwrap().remove("timestamp");
        r
    };
    let a = strip(cproj(&["verify", "--model", "nonminimal", "--n", "2"]));
    let b = strip(cproj(&["verify", "--model", "nonminimal", "--n", "2"]));
    assert_eq!(a, b);
}

#[test]
fn report_written_to_file() {
    let dir = scratch("out");
    let path = dir.join("table.json");
    let out = cproj(&["table", "--n-max", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["command"], "table --n-min 2 --n-max 2");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn derived_series_of_s_differs_from_stated_value() {
    let out = cproj(&["algebra", "s"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(check(&r, "Jacobi identity")["pass"], true);
    assert_eq!(check(&r, "Z2-grading respected")["pass"], true);
    let series = check(&r, "derived series");
    assert_eq!((series["expected"].as_str(), series["computed"].as_str()), (Some("8 5 3 0"), Some("8 6 3 0")));
}

#[test]
fn s_prime_passes() {
    let out = cproj(&["algebra", "s-prime"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(check(&report(&out), "derived series")["computed"], "6 5 3 0");
}

#[test]
fn lambda_family_symbolic_and_specialized() {
    let out = cproj(&["algebra", "lambda-family", "--lambda", "symbolic"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(check(&r, "Jacobi identity")["computed"], "true");
    let out = cproj(&["algebra", "lambda-family", "--lambda", "-3/7"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn deformation_by_type_three_cochain_fails_jacobi() {
    let out = cproj(&["algebra", "deform", "--type", "III", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(check(&report(&out), "Jacobi residual")["computed"], "nonzero");
    let out = cproj(&["algebra", "deform", "--type", "II", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(check(&report(&out), "Jacobi residual")["computed"], "zero");
}

#[test]
fn algebra_manifest_round_trip() {
    let dir = scratch("alg");
    let path = dir.join("s.alg");
    std::fs::write(&path, cproj_core::structlie::print_algebra(&cproj_core::structlie::s_prime())).unwrap();
    let out = cproj(&["algebra", "--manifest", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn prolong_reports_annihilator() {
    let out = cproj(&["prolong", "--type", "IV", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(check(&r, "annihilator dimension")["computed"], "10");
    assert_eq!(check(&r, "first prolongation dimension")["computed"], "0");
}

#[test]
fn metric_submaximal_with_signs() {
    let out = cproj(&["metric", "--n", "3", "--signs", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(check(&r, "degree of mobility")["computed"], "5");
    assert_eq!(check(&r, "Levi-Civita connection")["computed"], "equal to type2");
    let out = cproj(&["metric", "--model", "type2", "--n", "2", "--signs", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
