use std::path::PathBuf;
use std::process::{Command, Output};

fn sigmorse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigmorse")).args(args).output().expect("run binary")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn curve(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("curves").join(name).display().to_string()
}

fn tmp(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("sigmorse-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

#[test]
fn torus_signature_t34() {
    let o = sigmorse(&["signature", "torus", "--p", "3", "--q", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-6\n");
    let o = sigmorse(&["signature", "torus", "--p", "2", "--q", "3", "--x", "1/7"]);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn bounds() {
    assert_eq!(stdout(&sigmorse(&["bound", "a2k", "--p", "3", "--q", "7"])), "4\n");
    assert_eq!(stdout(&sigmorse(&["bound", "cusps", "--degree", "120"])), "4560\n");
}

#[test]
fn cable_and_braid() {
    assert_eq!(stdout(&sigmorse(&["cable", "--stages", "2:3,15:2"])), "-14\n");
    let o = sigmorse(&["braid", "--word", "1,1,1", "--strands", "2"]);
    assert_eq!(stdout(&o), "sigma -2\nnullity 0\nn 1\ncomponents 1\n");
}

#[test]
fn swallowtail_verdicts() {
    let o = sigmorse(&["check", "--bundled"]);
    let text = stdout(&o);
    let block: Vec<&str> = text.split("scenario ").find(|b| b.starts_with("swallowtail")).unwrap().lines().collect();
    assert!(block[1].contains("6 ≥ 4 HOLDS (slack 2)"));
    assert!(block[2].contains("6 ≤ 6 HOLDS (slack 0)"));
    // the printed cable verdict does not reproduce
    assert!(text.contains("8 ≥ 14 FAILS (slack -6)  MISMATCH"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn scenario_file_round_trip_and_check() {
    let text = include_str!("../../morse/scenarios/swallowtail.json");
    let path = tmp("swallowtail.json");
    std::fs::write(&path, text).unwrap();
    let o = sigmorse(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(text).unwrap();
    let again: serde_json::Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
}

#[test]
fn input_errors_exit_2() {
    let path = tmp("broken.json");
    std::fs::write(&path, "{\"schema\": \"sigmorse/1\",\n  \"scenario\": [}").unwrap();
    let o = sigmorse(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("broken.json:2:"), "{err}");
    assert_eq!(sigmorse(&["signature", "torus", "--p", "3", "--q", "4", "--x", "0.5"]).status.code(), Some(2));
    assert_eq!(sigmorse(&["signature", "torus", "--p", "0", "--q", "4"]).status.code(), Some(2));
    assert_eq!(sigmorse(&["braid", "--word", "1,3", "--strands", "2"]).status.code(), Some(2));
    assert_eq!(sigmorse(&["signature"]).status.code(), Some(2));
}

#[test]
fn profile_csv_round_trips() {
    let path = tmp("t34.csv");
    let o = sigmorse(&["profile", "torus", "--p", "3", "--q", "4", "--csv", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let p = sigmorse_spectra::SignatureProfile::from_csv(&text).unwrap();
    assert_eq!(p, sigmorse_spectra::signature_profile_torus(3, 4).unwrap());
    assert_eq!(p.to_csv(), text);
}

#[test]
fn trace_report_is_deterministic() {
    let args = ["trace", "--curve", &curve("cubic-node.json"), "--r-min", "0.5", "--r-max", "2.5"];
    let a = sigmorse(&args);
    let b = sigmorse(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let radii: Vec<f64> = v["criticals"].as_array().unwrap().iter().map(|c| c["rho"].as_f64().unwrap()).collect();
    assert!(radii.contains(&1.0) && radii.contains(&2.0));
    assert_eq!(v["ledger"]["counts"]["births"], 2);
    assert_eq!(v["genericity"]["g1"], false);
}

#[test]
fn trace_svg_and_errors() {
    let dir = tmp("svg");
    let o = sigmorse(&[
        "trace", "--curve", &curve("swallowtail.json"), "--r-min", "2.1", "--r-max", "2.6", "--samples", "1", "--svg",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> =
        std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    assert!(names.iter().all(|n| n.starts_with("link_r") && n.ends_with(".svg")) && !names.is_empty());
    let bad = tmp("bad-curve.json");
    std::fs::write(&bad, r#"{"parametric":{"x":[1]},"center":[0,0,0,0]}"#).unwrap();
    let o = sigmorse(&["trace", "--curve", bad.to_str().unwrap(), "--r-min", "1", "--r-max", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_lists_torus_nullities() {
    let o = sigmorse(&["report"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let hopf = v["torus_links"].as_array().unwrap().iter().find(|t| t["p"] == 2 && t["q"] == 2).unwrap();
    assert_eq!((hopf["c"].as_i64(), hopf["n"].as_i64()), (Some(2), Some(1)));
    assert_eq!(sigmorse(&["report"]).stdout, o.stdout);
}

#[test]
fn selftest_single_criterion() {
    let o = sigmorse(&["selftest", "--criterion", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("[PASS] C1"));
}
