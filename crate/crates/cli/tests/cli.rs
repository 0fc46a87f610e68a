use std::process::{Command, Output};

use qseries_core::VerificationReport;

fn qseries(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qseries"))
        .args(args)
        .env_remove("QSERIES_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_pi2_json() {
    let o = qseries(&["verify", "pi2", "--order", "200", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "verified");
    assert_eq!(v["order"], 200);
    assert!(v["first_mismatch"].is_null());
}

#[test]
fn json_report_round_trips_byte_for_byte() {
    let o = qseries(&["verify-all", "--order", "8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let reports: Vec<VerificationReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&reports).unwrap() + "\n", text);
    let ids: Vec<&str> = reports.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids.first(), Some(&"pi1"));
    assert_eq!(ids.last(), Some(&"red-grid"));
}

#[test]
fn expand_qid_lhs() {
    let o = qseries(&["expand", "qid.lhs", "--order", "11", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c: Vec<&str> = v["coeffs"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(c, ["1", "2", "-1", "0", "3", "-6", "3", "8", "-16", "8", "10"]);
    let text = stdout(&qseries(&["expand", "qid.lhs", "--order", "4"]));
    assert_eq!(text.trim(), "1 + 2q - q^2 + O(q^4)");
}

#[test]
fn unknown_id_is_usage_error() {
    assert_eq!(qseries(&["verify", "nosuch"]).status.code(), Some(2));
    assert_eq!(qseries(&["expand", "nosuch.lhs"]).status.code(), Some(2));
    assert_eq!(qseries(&["verify", "pi2", "--order", "0"]).status.code(), Some(2));
}

#[test]
fn environment_sets_default_order() {
    let o = Command::new(env!("CARGO_BIN_EXE_qseries"))
        .args(["verify", "qid", "--format", "json"])
        .env("QSERIES_ORDER", "7")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 7);
}

#[test]
fn config_file_yields_to_flags() {
    let dir = std::env::temp_dir().join(format!("qseries-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("q.toml");
    std::fs::write(&cfg, "order = 9\nformat = \"json\"\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&qseries(&["verify", "gauss-psi", "--config", cfg]))).unwrap();
    assert_eq!(v["order"], 9);
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&qseries(&["verify", "gauss-psi", "--config", cfg, "--order", "12"]))).unwrap();
    assert_eq!(v["order"], 12);
    let out = dir.join("r.csv");
    let o = qseries(&["verify", "gauss-psi", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("id,order,status"));
    assert!(csv.lines().nth(1).unwrap().starts_with("gauss-psi,1000,verified"));
}

#[test]
fn limit_csv() {
    let o = qseries(&["limit", "gamma-half", "--eps", "0.1,0.01", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("eps,value,abs_error"));
    assert_eq!(lines.count(), 2);
    assert_eq!(qseries(&["limit", "gamma-half", "--eps", "0.01,0.1"]).status.code(), Some(2));
}

#[test]
fn classical_and_arith() {
    let o = qseries(&["classical", "guillera", "--terms", "40"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("guillera (40 terms)"));
    let o = qseries(&["arith", "t2", "--count", "50", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mismatches"], 0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 50);
}

#[test]
fn wz_check_half() {
    let o = qseries(&["wz-check", "--a", "1/2", "--grid", "4x4", "--order", "30"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("25 grid points"));
    assert!(text.contains("telescoped sums equal: true"));
}
