use std::path::Path;
use std::process::{Command, Output};

use dtomo::runner::{execute, Command as RunCommand, RunOptions};

fn dtomo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtomo")).args(args).output().expect("spawn dtomo")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const SCAN: &str = r#"{"scheme": "noon", "n": 6, "grid": {"phi1": [-0.3, 0.3, 0.1], "phi2": [-0.1, 0.1, 0.05]}}"#;
const MC: &str = r#"{"scheme": "noon", "n_values": [2, 4], "phases": [[0.2, 0.0], [0.1, 0.05]],
    "shots": {"seed": 9, "per_observable": 500, "repetitions": 40}}"#;

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "mc.json", MC);
    let mut outs = Vec::new();
    for threads in ["1", "4", "4"] {
        let out = dir.path().join(format!("mc-{}.csv", outs.len()));
        let o = dtomo(&["mc", "--config", &cfg, "--out", out.to_str().unwrap(), "--threads", threads]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        outs.push(std::fs::read(out).unwrap());
    }
    assert_eq!(outs[0], outs[1]);
    assert_eq!(outs[1], outs[2]);
}

#[test]
fn seed_flag_overrides_config() {
    let a = execute(RunCommand::Mc, MC, &RunOptions { seed: Some(1), threads: Some(2) }).unwrap();
    let b = execute(RunCommand::Mc, MC, &RunOptions { seed: Some(2), threads: Some(2) }).unwrap();
    assert!(a.starts_with("# dtomo ") && a.lines().next().unwrap().ends_with("seed=1"));
    assert_ne!(a.lines().nth(2), b.lines().nth(2));
}

#[test]
fn header_carries_version_hash_and_seed() {
    let csv = execute(RunCommand::Scan, SCAN, &RunOptions::default()).unwrap();
    let mut lines = csv.lines();
    let head = lines.next().unwrap();
    assert!(head.starts_with(&format!("# dtomo {} config_sha256=", env!("CARGO_PKG_VERSION"))), "{head}");
    assert!(head.ends_with(" seed=0"));
    assert_eq!(lines.next().unwrap(), "scheme,N,phi1,phi2,inv_var_phi1,inv_var_phi2");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 7 * 5);
    // phi2 outer, phi1 inner
    assert!(rows[0].starts_with("noon,6,-0.3,-0.1,"));
    assert!(rows[1].starts_with("noon,6,-0.2,-0.1,"));
    assert!(rows[7].starts_with("noon,6,-0.3,-0.05,"));
}

#[test]
fn reconstruct_exact_recovers_state() {
    let cfg = r#"{"scheme": "qubit", "state": {"preset": "ramp-4"}, "theta": 1.5707963267948966, "exact": true}"#;
    let csv = execute(RunCommand::Reconstruct, cfg, &RunOptions::default()).unwrap();
    let body: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(body[0], "x,re_psi_true,im_psi_true,re_psi_est,im_psi_est,abs_err");
    assert_eq!(body.len(), 5);
    for row in &body[1..] {
        let err: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!(err < 1e-10, "{row}");
    }
}

#[test]
fn fisher_reports_fit_lines() {
    let cfg = r#"{"scheme": "noon", "n_values": [4, 8, 12], "gamma_abs": [1.0, 1.1]}"#;
    let csv = execute(RunCommand::Fisher, cfg, &RunOptions::default()).unwrap();
    assert!(csv.contains("\nN,gamma_abs,f11,f22,f12,crb11,crb22\n"));
    assert_eq!(csv.lines().filter(|l| l.starts_with("# fit gamma_abs=")).count(), 2);
}

#[test]
fn config_problems_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write(dir.path(), "a.json", r#"{"scheme": "noon", "n": 4, "grdi": {}}"#);
    let wrong =
        write(dir.path(), "b.json", r#"{"scheme": "qubit", "n": 4, "grid": {"phi1": [0, 1, 0.5], "phi2": [0, 0, 1]}}"#);
    let theta = write(
        dir.path(),
        "c.json",
        r#"{"scheme": "qubit", "state": {"preset": "uniform-2"}, "theta": 4.0, "exact": true}"#,
    );
    for (cmd, cfg) in [("scan", &unknown), ("scan", &wrong), ("reconstruct", &theta)] {
        let o = dtomo(&[cmd, "--config", cfg]);
        assert_eq!(o.status.code(), Some(2), "{cmd} {cfg}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = dtomo(&["scan", "--config", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = dtomo(&["scan", "--config", &write(dir.path(), "d.json", SCAN), "--threads", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn numeric_domain_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    // psi_2 = i psi_1 at theta = pi makes alpha^2 + beta^2 vanish for x = 1
    let cfg = write(
        dir.path(),
        "deg.json",
        r#"{"scheme": "qubit", "state": {"amplitudes": [[1, 0], [0, 1]]}, "theta": 3.141592653589793, "exact": true}"#,
    );
    let o = dtomo(&["reconstruct", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
}

#[test]
fn stdout_when_no_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "scan.json", SCAN);
    let o = dtomo(&["scan", "--config", &cfg, "--seed", "3"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text, execute(RunCommand::Scan, SCAN, &RunOptions { seed: Some(3), threads: None }).unwrap());
}
