use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ionbound"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ionbound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn bvalue_json() {
    let out = bin().args(["bvalue", "--s", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let b = v["b"].as_f64().unwrap();
    assert!(b > 1.2071 && b < 1.2072);
    for key in ["s", "t0", "b", "beta_lower"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(bin().arg("nonsense").output().unwrap().status.code(), Some(2));
    assert_eq!(bin().args(["alpha", "--n", "3"]).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().args(["bvalue", "--s", "5"]).output().unwrap().status.code(), Some(1));
    assert_eq!(bin().args(["bound", "--z", "1", "--prop", "s3"]).output().unwrap().status.code(), Some(1));
    let out = bin().args(["verify", "--suite", "taylor"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 1);
}

#[test]
fn config_file_and_usage_errors() {
    let bad = scratch("bad.cfg");
    std::fs::write(&bad, "max_iter = 0\n").unwrap();
    let out = bin().args(["crossovers", "--config"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn verify_failure_exit_code() {
    let cfg = scratch("verify.cfg");
    std::fs::write(&cfg, "verify_resolution = 40\nverify_samples = 500\n").unwrap();
    let out = bin().args(["verify", "--suite", "power-chain", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn csv_format_for_scalar_commands() {
    let out = bin().args(["--format", "csv", "crossovers"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s2_vs_lieb,s3_vs_s2"));
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|c| c.parse().unwrap()).collect();
    assert!((row[0] - 5.3).abs() <= 0.1);
    assert!((row[1] - 35.8).abs() <= 0.2);
}

#[test]
fn figure1_shape_and_determinism() {
    let cfg = scratch("fig1.cfg");
    std::fs::write(&cfg, "# small budget\nn_starts = 6\nseed = 11\n").unwrap();
    let run = |name: &str| {
        let path = scratch(name);
        let status = bin().args(["figure1", "--config"]).arg(&cfg).arg("--out").arg(&path).status().unwrap();
        assert_eq!(status.code(), Some(0));
        std::fs::read_to_string(path).unwrap()
    };
    let a = run("fig1a.csv");
    let b = run("fig1b.csv");
    assert_eq!(a, b);
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines[0], "N,s,alpha");
    assert_eq!(lines.len(), 67);
    assert_eq!(lines[1], "2,1.000000,0.500000");
}

#[test]
fn figure2_shape() {
    let path = scratch("fig2.csv");
    let status = bin().args(["figure2", "--out"]).arg(&path).status().unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "s,b,b_num");
    assert_eq!(lines.len(), 31);
    assert!(lines[30].starts_with("3.000000,1.118434,"));
}
