use std::process::{Command, Output};

use kstab_core::invariants::{reports_from_csv, reports_from_json};

fn kstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kstab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_two_special_points() {
    let o = kstab(&["compute", "--case", "over-S:2", "--r", "2", "--I", "0,inf", "--beta", "1/7"]);
    assert_eq!(o.status.code(), Some(0));
    let r = reports_from_json(&stdout(&o)).unwrap();
    assert_eq!((r[0].s.to_string(), r[0].a.to_string(), r[0].ratio.to_string()), ("8/7".into(), "8/7".into(), "1".into()));
}

#[test]
fn compute_quadric_case_four() {
    let o = kstab(&["compute", "--case", "over-S:4", "--r", "0", "--beta", "1/9"]);
    let r = reports_from_json(&stdout(&o)).unwrap();
    assert_eq!((r[0].s.to_string(), r[0].ratio.to_string()), ("11/9".into(), "1".into()));
}

#[test]
fn validation_errors_exit_2() {
    for args in [
        &["compute", "--case", "over-S:2", "--I", "0", "--beta", "0"][..],
        &["compute", "--case", "over-S:9", "--I", "0", "--beta", "1/2"],
        &["compute", "--case", "over-S:2", "--I", "1", "--beta", "1/2"],
        &["expand", "--case", "over-S:2", "--I", "0", "--beta", "1/2", "--order", "7"],
        &["compute", "--case", "on-S:C", "--I", "0", "--beta", "1/2", "--method", "toric"],
        &["reproduce", "--only", "nothing"],
        &["git"],
    ] {
        let o = kstab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn output_is_deterministic_and_ordered() {
    let args = ["compute", "--case", "over-S:1", "--I", "0,1", "--beta", "1/3", "--beta", "1/50", "--beta", "1/7", "--order", "2"];
    let a = stdout(&kstab(&args));
    assert_eq!(a, stdout(&kstab(&args)));
    let betas: Vec<String> = reports_from_json(&a).unwrap().iter().map(|r| r.beta.to_string()).collect();
    assert_eq!(betas, ["1/3", "1/50", "1/7"]);
}

#[test]
fn csv_and_json_agree() {
    let base = ["expand", "--case", "over-S:3", "--I", "0,2", "--beta", "1/11", "--beta", "1/4", "--order", "3"];
    let js = reports_from_json(&stdout(&kstab(&[&base[..], &["--format", "json"]].concat()))).unwrap();
    let cs = reports_from_csv(&stdout(&kstab(&[&base[..], &["--format", "csv"]].concat()))).unwrap();
    assert_eq!(js, cs);
    assert_eq!(js[0].expansion.len(), 4);
}

#[test]
fn decimal_flag_marks_approximations() {
    let o = kstab(&["compute", "--case", "over-S:4", "--r", "0", "--beta", "1/9", "--decimal"]);
    assert!(stdout(&o).contains("\"11/9 (~1.222222)\""));
    let o = kstab(&["compute", "--case", "over-S:4", "--r", "0", "--beta", "1/9"]);
    assert!(!stdout(&o).contains('~'));
}

#[test]
fn config_file_and_out_path() {
    let dir = std::env::temp_dir().join(format!("kstab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.json");
    std::fs::write(&cfg, r#"{"r":1,"I":[0],"case":"over-S:2","beta":"1/10"}"#).unwrap();
    let out = dir.join("out.json");
    let o = kstab(&["compute", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = reports_from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r[0].s.to_string(), "242/215");
}

#[test]
fn profile_lists_three_chambers() {
    let o = kstab(&["profile", "--case", "over-S:2", "--I", "0,inf", "--beta", "1/7"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["breakpoints"], serde_json::json!(["0", "1/7", "15/7", "16/7"]));
    assert_eq!(v[0]["S"], "8/7");
}

#[test]
fn git_and_table() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&kstab(&["git", "--multiplicities", "2,1,1"]))).unwrap();
    assert_eq!(v["verdict"], "strictly_semistable");
    assert_eq!(v["polystable"], false);
    let t = stdout(&kstab(&["table", "--format", "csv"]));
    assert!(t.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn toric_pentagon() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&kstab(&["toric", "--I", "0", "--beta", "1"]))).unwrap();
    assert_eq!(v[0]["barycenter"], serde_json::json!(["-19/21", "-19/21"]));
    assert_eq!(v[0]["psi"], "-5");
    assert_eq!(kstab(&["toric", "--I", "1", "--beta", "1/2"]).status.code(), Some(2));
}

#[test]
fn reproduce_passes_and_filters() {
    let o = kstab(&["reproduce"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = kstab(&["reproduce", "--only", "toric"]);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS toric/")).count(), 5);
    assert!(text.ends_with("5 checks, 5 passed, 0 failed\n"));
}

#[test]
fn corrupted_fan_asset_is_reported() {
    let dir = std::env::temp_dir().join(format!("kstab-cli-fan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fan.json");
    std::fs::write(&path, r#"{"labels":["F0","E0","H0","Finf","Hinf"],"rays":[[1,0],[1,1],[0,1],[-1,0],[0,-1]],"coeffs":[["1","1"],["1","2"],["0","3"],[],[]]}"#).unwrap();
    let o = kstab(&["reproduce", "--only", "toric", "--fan-asset", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("toric/beta=1/5"));
}
