use std::process::{Command, Output};

use serde_json::Value;

fn trisym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trisym")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = trisym(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn roots_reports() {
    let g2 = json(&["roots", "G2"]);
    assert_eq!(g2["positive"].as_array().unwrap().len(), 6);
    assert_eq!(g2["marks"], serde_json::json!([3, 2]));
    assert_eq!(g2["maximal_root"], serde_json::json!([3, 2]));
    assert_eq!(json(&["roots", "C3"])["positive"].as_array().unwrap().len(), 9);
    assert_eq!(json(&["roots", "A1"])["positive"].as_array().unwrap().len(), 1);
    let c2 = json(&["roots", "C2"]);
    assert_eq!(c2["gram"][0][0], "1/6");

    let out = trisym(&["roots", "C1"]);
    assert_eq!(out.status.code(), Some(2));
    let table = String::from_utf8(trisym(&["roots", "G2"]).stdout).unwrap();
    assert!(table.contains("marks         (3,2)"));
    let csv = String::from_utf8(trisym(&["roots", "B3", "--format", "csv"]).stdout).unwrap();
    assert_eq!(csv.lines().count(), 10);
}

#[test]
fn auto3_reports() {
    let rows = json(&["auto3", "F4", "--all"]);
    let mut iso: Vec<&str> = rows.as_array().unwrap().iter().map(|r| r["isotropy"].as_str().unwrap()).collect();
    iso.sort();
    assert_eq!(iso, ["A2+A2", "B3+T1", "C3+T1"]);

    let c4 = json(&["auto3", "C4", "A3III", "1"]);
    assert_eq!(c4[0]["isotropy"], "C3+T1");
    assert_eq!(c4[0]["dim_m"], 14);

    let g2 = json(&["auto3", "G2", "A3IV", "1"]);
    assert_eq!(g2[0]["isotropy"], "A2");
    assert_eq!(g2[0]["dim_m"], 6);
    assert_eq!(g2[0]["piH"], serde_json::json!([[0, 1], [-3, -2]]));

    let a2 = json(&["auto3", "A2", "--all"]);
    assert_eq!(a2.as_array().unwrap().len(), 3);
    let a2 = json(&["auto3", "A2", "--all", "--dedup"]);
    assert_eq!(a2.as_array().unwrap().len(), 2);

    let out = trisym(&["auto3", "C3", "A3I", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m_1 = 2"));
    assert_eq!(trisym(&["auto3", "C3"]).status.code(), Some(2));
    assert_eq!(trisym(&["auto3", "C3", "A3V", "1"]).status.code(), Some(2));
}

#[test]
fn curv_reports() {
    let cp3 = json(&["curv", "cp3-sp"]);
    assert!((cp3["delta"].as_f64().unwrap() - 0.0625).abs() < 1e-4);
    assert_eq!(cp3["scale"], "1/2");
    assert_eq!(cp3["converged_starts"], 64);
    assert!(cp3["flat_witness"].is_null());
    assert!(cp3["basis_table"].as_array().unwrap().iter().any(|e| e["k"] == "2/3"));
    assert_eq!(cp3["argmin"].as_array().unwrap().len(), 2);

    let s6 = json(&["curv", "s6", "--starts", "8"]);
    let r = s6["kmax"].as_f64().unwrap() / s6["kmin"].as_f64().unwrap();
    assert!((r - 1.0).abs() < 1e-6);

    let f6 = json(&["curv", "f6", "--starts", "8"]);
    assert!(f6["flat_witness"]["numerator"].as_f64().unwrap() <= 1e-10);

    let scaled = json(&["curv", "cp3-sp", "--scale", "1", "--starts", "8"]);
    assert!((scaled["kmax"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-9);
    assert_eq!(scaled["scale"], "1/1");
}

#[test]
fn curv_is_deterministic_and_writes_files() {
    let a = trisym(&["curv", "cp5-sp", "--format", "json", "--seed", "7"]);
    let b = trisym(&["curv", "cp5-sp", "--format", "json", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = trisym(&["curv", "cp5-sp", "--format", "json", "--seed", "7", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn table_numbers_appear_in_json() {
    let table = String::from_utf8(trisym(&["curv", "cp3-sp", "--starts", "8"]).stdout).unwrap();
    let js = json(&["curv", "cp3-sp", "--starts", "8"]);
    for key in ["kmin", "kmax", "delta", "einstein_defect"] {
        let line = table.lines().find(|l| l.starts_with(key)).unwrap();
        let v: f64 = line.split_whitespace().nth(1).unwrap().parse().unwrap();
        assert_eq!(v, js[key].as_f64().unwrap(), "{key}");
    }
    let csv = String::from_utf8(trisym(&["curv", "cp3-sp", "--starts", "8", "--format", "csv"]).stdout).unwrap();
    assert!(csv.starts_with("field,i,j,value\n"));
    let basis_rows = csv.lines().filter(|l| l.starts_with("basis,")).count();
    assert_eq!(basis_rows, js["basis_table"].as_array().unwrap().len());
}

#[test]
fn curv_errors_and_partial_convergence() {
    let out = trisym(&["curv", "cp3-spp"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("did you mean 'cp3-sp'"));
    assert_eq!(trisym(&["curv", "cp3-sp", "--scale", "0"]).status.code(), Some(2));
    assert_eq!(trisym(&["curv", "cp3-sp", "--scale", "-1/2"]).status.code(), Some(2));
    assert_eq!(trisym(&["curv", "cp3-sp", "--scale", "x"]).status.code(), Some(2));
    assert_eq!(trisym(&["curv", "cp1-su"]).status.code(), Some(2));

    let out = trisym(&["curv", "cp3-sp", "--max-iter", "1", "--starts", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["converged_starts"].as_u64().unwrap() < 4);
}
