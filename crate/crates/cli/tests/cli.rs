use std::path::Path;
use std::process::{Command, Output};

fn sitcj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sitcj")).args(args).output().unwrap()
}

fn sweep_to(out: &Path, threads: &str) -> Vec<u8> {
    let o = sitcj(&[
        "sweep", "--axis", "e", "--values", "1,2,4", "--trials", "30", "--b", "2", "--t", "2",
        "--p-db", "10", "--seed", "9", "--threads", threads, "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::read(out).unwrap()
}

#[test]
fn sweep_csv_is_byte_identical_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let a = sweep_to(&dir.path().join("a.csv"), "1");
    let b = sweep_to(&dir.path().join("b.csv"), "1");
    let c = sweep_to(&dir.path().join("c.csv"), "4");
    assert_eq!(a, b);
    assert_eq!(a, c);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("sweep_axis,sweep_value,scheme,mean_rs,mean_ro,mean_rtotal,trials\n"));
    assert_eq!(text.lines().count(), 1 + 3 * 3);
}

#[test]
fn single_prints_every_requested_scheme() {
    let o = sitcj(&["single", "--trial", "3", "--b", "2", "--e", "2", "--t", "1", "--schemes", "no,sitcj"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("no ")));
    assert!(text.lines().any(|l| l.starts_with("sitcj ")));
    assert!(!text.lines().any(|l| l.starts_with("gn ")));
}

#[test]
fn verify_reports_deviations() {
    let o = sitcj(&["verify", "--suite", "sd", "--seed", "2"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    for line in text.lines() {
        let value: f64 = line.rsplit(": ").next().unwrap().parse().unwrap();
        assert!(value < 1e-8, "{line}");
    }
}

#[test]
fn bad_arguments_fail_with_a_message() {
    let o = sitcj(&["sweep", "--axis", "q", "--values", "1"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown sweep axis"));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let o = sitcj(&["sweep", "--axis", "b", "--values", "2,1", "--out", out.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("values"));
}
