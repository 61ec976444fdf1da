use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tlbraid(args: &[&str], out_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tlbraid"));
    cmd.args(args).env_remove("TLBRAID_OUT_DIR");
    if let Some(d) = out_dir {
        cmd.env("TLBRAID_OUT_DIR", d);
    }
    cmd.output().expect("binary runs")
}

fn json_file(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn verify_braid_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("braid.json");
    let o = tlbraid(&["verify", "braid", "--max-n", "4", "--random", "20", "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_file(&out);
    assert_eq!(v["schema"], "tl-verify-report/1");
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v["summary"]["passed"].as_u64().unwrap() > 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("wall time"));
    assert!(!std::fs::read_to_string(&out).unwrap().contains("wall"));
}

#[test]
fn reports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = tlbraid(&["verify", "braid", "--max-n", "3", "--seed", "5", "--jobs", "1", "--random", "10", "--out", p.to_str().unwrap()], None);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn default_output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = tlbraid(&["verify", "tl", "--max-n", "3"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("verify-tl.json").exists());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(tlbraid(&["verify", "knots"], None).status.code(), Some(2));
    assert_eq!(tlbraid(&["verify", "braid", "--spec", "root:x"], None).status.code(), Some(2));
    assert_eq!(tlbraid(&["render", "2x2:[(1,3)]"], None).status.code(), Some(2));
    assert_eq!(tlbraid(&["fusion-table", "S2,1", "S1,1"], None).status.code(), Some(2));
    assert_eq!(tlbraid(&["eigen", "3"], None).status.code(), Some(2));
    assert_eq!(tlbraid(&["frobnicate"], None).status.code(), Some(2));
}

#[test]
fn failing_suite_exits_1_and_still_writes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dilute.json");
    let o = tlbraid(&["verify", "dilute", "--max-n", "3", "--random", "5", "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    let v = json_file(&out);
    let failed: Vec<&Value> = v["cases"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c["parameters"]["family"] == "dilute-ik"));
}

#[test]
fn fusion_root_three_includes_projective_case() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.json");
    let o = tlbraid(&["verify", "fusion", "--spec", "root:3", "--max-n", "3", "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let v = json_file(&out);
    let hit = v["cases"].as_array().unwrap().iter().any(|c| {
        c["identity"] == "jordan-type" && c["parameters"]["left"] == "S2,2" && c["parameters"]["right"] == "S1,1"
    });
    assert!(hit);
}

#[test]
fn fusion_table_generic_summands() {
    let o = tlbraid(&["fusion-table", "2", "2", "1", "1", "generic"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let ks: Vec<u64> = v["summands"].as_array().unwrap().iter().map(|s| s["k"].as_u64().unwrap()).collect();
    assert_eq!(ks, vec![1, 3]);
    assert_eq!(v["dim"], 3);
    assert_eq!(v["routes_agree"], true);
}

#[test]
fn fusion_table_root_of_unity() {
    let o = tlbraid(&["fusion-table", "End2", "End2", "--spec", "root:2"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dim"], 14);
    assert_eq!(v["jordan"].as_array().unwrap().len(), 1);
    assert_eq!(v["jordan"][0]["blocks"], serde_json::json!([3, 3, 2, 2, 1, 1, 1, 1]));
}

#[test]
fn eigen_values() {
    let o = tlbraid(&["eigen", "4", "2"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["gamma"], "s^16");
    assert_eq!(v["gamma_on_module"], "s^16");
    assert_eq!(v["agree"], true);
    let o = tlbraid(&["eigen", "--module", "5", "3"], None);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn render_commutor() {
    let dir = tempfile::tempdir().unwrap();
    let o = tlbraid(&["render", "eta:1:1", "--format", "svg"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(dir.path().join("render.svg")).unwrap();
    assert_eq!(svg.matches("<rect").count(), 2);
    let o = tlbraid(&["render", "4x2:[(1,6),(2,3),(4,5)]"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("L2 - L3"));
}
