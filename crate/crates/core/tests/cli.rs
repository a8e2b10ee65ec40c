use std::io::Write;
use std::process::{Command, Output};

fn g2dbl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2dbl")).args(args).output().expect("binary runs")
}

fn manifest(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

#[test]
fn double_cosets_manifest() {
    let m = manifest(r#"[{"id":"weyl.double_cosets"}]"#);
    let o = g2dbl(&["--manifest", m.path().to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["computed"], 6576);
    assert_eq!(v[0]["status"], "pass");
}

#[test]
fn empty_manifest_exits_zero() {
    let m = manifest("[]");
    let o = g2dbl(&["run", "--manifest", m.path().to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v, serde_json::json!([]));
}

#[test]
fn check3_with_params() {
    let m = manifest(r#"[{"id":"zeta.check3","params":{"D":3}}]"#);
    let o = g2dbl(&["--manifest", m.path().to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["status"], "pass");
    assert_eq!(v[0]["truncation"], 3);
}

#[test]
fn json_key_order_is_fixed() {
    let o = g2dbl(&["--check", "g2chars.dim7", "--json"]);
    let s = String::from_utf8(o.stdout).unwrap();
    let keys = ["\"id\"", "\"statement\"", "\"status\"", "\"expected\"", "\"computed\"", "\"truncation\"", "\"runtime_ms\""];
    let pos: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{s}");
}

#[test]
fn report_only_and_text_output() {
    let o = g2dbl(&["--check", "weyl.nu0_words", "--check", "g2chars.delta_b"]);
    assert_eq!(o.status.code(), Some(0));
    let s = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("report-only weyl.nu0_words"));
    assert!(lines[1].starts_with("pass"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(g2dbl(&["--check", "zeta.nope"]).status.code(), Some(2));
    let m = manifest(r#"[{"id":"zeta.check3","params":{"E":1}}]"#);
    assert_eq!(g2dbl(&["--manifest", m.path().to_str().unwrap()]).status.code(), Some(2));
    let m = manifest(r#"[{"id":"zeta.check3","extra":true}]"#);
    assert_eq!(g2dbl(&["--manifest", m.path().to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(g2dbl(&["--degree", "0"]).status.code(), Some(2));
    assert_eq!(g2dbl(&["--manifest", "/nonexistent/m.json"]).status.code(), Some(2));
    assert_eq!(g2dbl(&["--bogus"]).status.code(), Some(2));
}

#[test]
fn output_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let strip = |p: &std::path::Path| -> String {
        std::fs::read_to_string(p).unwrap().lines().filter(|l| !l.contains("runtime_ms")).collect::<Vec<_>>().join("\n")
    };
    let m = manifest(r#"[{"id":"zeta.end_to_end","params":{"D":4}},{"id":"zeta.tau_remark"},{"id":"zeta.named"}]"#);
    let mut outs = Vec::new();
    for (i, jobs) in ["1", "3"].iter().enumerate() {
        let p = dir.path().join(format!("r{i}.json"));
        let o = g2dbl(&["--manifest", m.path().to_str().unwrap(), "--json", "--jobs", jobs, "--output", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
        outs.push(strip(&p));
    }
    assert_eq!(outs[0], outs[1]);
}

#[test]
fn list_and_named() {
    let o = g2dbl(&["list"]);
    assert!(String::from_utf8(o.stdout).unwrap().contains("zeta.check3"));
    let o = g2dbl(&["named", "z0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!o.stdout.is_empty());
    assert_eq!(g2dbl(&["named", "nope"]).status.code(), Some(2));
}
