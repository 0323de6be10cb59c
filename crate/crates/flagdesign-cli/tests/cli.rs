use std::path::PathBuf;
use std::process::{Command, Output};

fn flagdesign(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagdesign"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("flagdesign-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn construct_example1_emits_params() {
    let o = flagdesign(&["construct", "example1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let p = &v["params"];
    assert_eq!(
        (p["v"].as_u64(), p["b"].as_u64(), p["r"].as_u64(), p["k"].as_u64(), p["lambda"].as_u64()),
        (Some(11), Some(55), Some(15), Some(3), Some(3))
    );
}

#[test]
fn subdegrees_of_psl2_8_on_d14() {
    let o = flagdesign(&["subdegrees", "--group", "PSL(2,8)", "--stab", "D-"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1, 7^3, 14");
}

#[test]
fn verify_baer_design_under_psigmal() {
    let o = flagdesign(&["construct", "example2", "--q", "25"]);
    assert_eq!(o.status.code(), Some(0));
    let path = scratch("baer25.json");
    std::fs::write(&path, o.stdout).unwrap();
    let o = flagdesign(&["verify", "--in", path.to_str().unwrap(), "--group", "PSigmaL(2,25)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2-(26,6,3), flag-transitive: true");
    let o = flagdesign(&["verify", "--in", path.to_str().unwrap(), "--group", "PGL(2,25)"]);
    assert_eq!(stdout(&o).trim(), "2-(26,6,3), flag-transitive: false");
}

#[test]
fn search_json_verdict() {
    let o = flagdesign(&["--json", "search", "--group", "PSL(2,11)", "--params", "11,55,15,3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["outcome"].get("DesignFound").is_some());
    let o = flagdesign(&["search", "--group", "PSL(2,11)", "--params", "55,99,18,10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("b does not divide |G|"));
}

#[test]
fn filter_case_and_tables() {
    let o = flagdesign(&["--json", "filter", "--case", "9", "--q-range", "4..1000"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    let o = flagdesign(&["filter", "--tab1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PGL(2,11)"));
}

#[test]
fn classify_small_range_with_certificates() {
    let dir = scratch("certs");
    let o = flagdesign(&["--threads", "2", "classify", "--q-max", "11", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("2-(5,3,3)"));
    assert!(text.contains("2-(8,4,3)"));
    assert!(text.contains("2-(11,3,3)"));
    assert!(text.contains("2-(11,6,3)"));
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 4);
}

#[test]
fn output_is_deterministic() {
    let a = flagdesign(&["--json", "search", "--group", "PGammaL(2,8)", "--params", "36,126,21,6"]);
    let b = flagdesign(&["--json", "search", "--group", "PGammaL(2,8)", "--params", "36,126,21,6"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(flagdesign(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(flagdesign(&["group", "PSL(2,6)"]).status.code(), Some(1));
    assert_eq!(flagdesign(&["search", "--group", "PSL(2,11)", "--params", "11,55,15,4"]).status.code(), Some(1));
    let cfg = scratch("tiny.json");
    std::fs::write(&cfg, r#"{"max_cosets": 100000, "max_elements": 200000, "max_exhaustive": 100}"#).unwrap();
    let o = flagdesign(&["--config", cfg.to_str().unwrap(), "search", "--group", "PSL(2,11)", "--params", "11,55,15,3"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(flagdesign(&["--help"]).status.code(), Some(0));
}
