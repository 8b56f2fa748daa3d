use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn spectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectra"))
        .args(args)
        .env_remove("SPECTRA_MODE")
        .output()
        .expect("binary runs")
}

fn json_out(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn realize5_reports_a_passing_certificate() {
    let out = spectra(&["realize5", "--family", "t", "--t0", "1", "--t", "4/5", "--d1", "11/2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_out(&out);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["construction"]["b"], "63/25");
    assert_eq!(v["matrix"]["entries"][2][3], "1/2");
}

#[test]
fn realize5_auto_uses_the_interval_midpoint() {
    let out = spectra(&["realize5", "--family", "t", "--t0", "1", "--t", "0.8"]);
    assert_eq!(json_out(&out)["construction"]["d1"], "271/50");
}

#[test]
fn realize5_outside_the_domain_is_a_usage_error() {
    let out = spectra(&["realize5", "--family", "t", "--t0", "5/2", "--t", "1/2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("t0 < 2"));
}

#[test]
fn region_csv_crosses_the_threshold_at_t0_one() {
    let out = spectra(&["region", "--family", "t", "--grid-step", "1/50"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t0,t,torre,boundary_member,symmetric"));
    let row: Vec<(f64, bool)> = lines
        .map(|l| l.split(',').collect::<Vec<_>>())
        .filter(|c| c[0] == "1")
        .map(|c| (c[1].parse().unwrap(), c[2] == "true"))
        .collect();
    let first = row.iter().find(|(_, m)| *m).unwrap().0;
    assert!((0.7877..0.7877 + 0.02).contains(&first), "{first}");
    assert!(row.iter().all(|(t, m)| *m == (*t >= first)));
}

#[test]
fn verify_with_wrong_spectrum_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "m.json",
        r#"{"rows":2,"cols":2,"entries":[["0","2"],["2","0"]]}"#,
    );
    let sp = write(dir.path(), "s.json", r#"["3","-2"]"#);
    let out = spectra(&["verify", "--matrix", s(&m), "--spectrum", s(&sp)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_out(&out)["verdict"], "fail");
    let ok = write(dir.path(), "ok.json", r#"{"eigenvalues":["2","-2"]}"#);
    let out = spectra(&["verify", "--matrix", s(&m), "--spectrum", s(&ok)]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = spectra(&["verify", "--nope"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn normalize_in_both_modes() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(
        dir.path(),
        "a.json",
        r#"{"rows":3,"cols":3,"entries":[[2,0,0],[1,1,0],[0,1,3]]}"#,
    );
    let out = spectra(&["normalize", "--in", s(&a)]);
    let v = json_out(&out);
    assert_eq!(v["mode"], "exact");
    assert_eq!(v["lambda1"], "3");
    let out = Command::new(env!("CARGO_BIN_EXE_spectra"))
        .args(["normalize", "--in", s(&a)])
        .env("SPECTRA_MODE", "float")
        .output()
        .unwrap();
    assert_eq!(json_out(&out)["mode"], "float");
}

#[test]
fn normalize_falls_back_to_float_for_irrational_roots() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"rows":2,"cols":2,"entries":[[1,1],[1,0]]}"#);
    let v = json_out(&spectra(&["normalize", "--in", s(&a), "--mode", "exact"]));
    assert_eq!(v["mode"], "float");
    assert!(v["warnings"][0].as_str().unwrap().contains("not rational"));
}

#[test]
fn guo_shift_and_bond() {
    let dir = tempfile::tempdir().unwrap();
    let b = write(dir.path(), "b.json", r#"{"rows":2,"cols":2,"entries":[[0,2],[2,0]]}"#);
    let sp = write(dir.path(), "s.json", r#"["2","-2"]"#);
    let out = spectra(&["guo-shift", "--in", s(&b), "--eps", "1", "--spectrum", s(&sp)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json_out(&out)["matrix"]["entries"][0],
        serde_json::json!(["1/2", "5/2"])
    );
    let q = write(dir.path(), "q.json", r#"["1","-1"]"#);
    let out = spectra(&[
        "guo-shift",
        "--in",
        s(&b),
        "--eps",
        "0",
        "--q",
        s(&q),
        "--spectrum",
        s(&sp),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonnegativity lost"));

    let a = write(dir.path(), "a.json", r#"{"rows":2,"cols":2,"entries":[[1,1],[1,2]]}"#);
    let out = spectra(&["bond", "--a", s(&a), "--b", s(&b), "--c", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_out(&out)["matrix"]["rows"], 3);
    let out = spectra(&["bond", "--a", s(&a), "--b", s(&b), "--c", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn jordan_forms_counts_partitions() {
    let dir = tempfile::tempdir().unwrap();
    let sp = write(dir.path(), "s.json", r#"["2.8","2.2","-1","-2","-2"]"#);
    let v = json_out(&spectra(&["jordan-forms", "--spectrum", s(&sp)]));
    assert_eq!(v["count"], 2);
}

#[test]
fn demo_writes_report_and_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("demo");
    let out = spectra(&["demo", "--out-dir", s(&out_dir), "--trials", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let report = std::fs::read_to_string(out_dir.join("report.md")).unwrap();
    assert!(report.contains("| d3 | 67/50 | 129/50 | false |"));
    assert!(out_dir.join("realize_tprime.json").exists());
}
