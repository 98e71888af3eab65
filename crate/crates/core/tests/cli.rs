//! The `chofisher` binary end to end: outputs, exit codes, files.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    run_env(args, None)
}

fn run_env(args: &[&str], config: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chofisher"));
    cmd.args(args).env_remove("CHOFISHER_CONFIG");
    if let Some(p) = config {
        cmd.env("CHOFISHER_CONFIG", p);
    }
    cmd.output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Named column of the single data row.
fn cell(csv: &str, column: &str) -> f64 {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == column).unwrap();
    row[i].parse().unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn energy_queries() {
    let o = run(&["energy", "--system", "cho", "--state", "1s", "--omega", "1", "--rc", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(rel(cell(&stdout(&o), "energy"), 19.77453418) < 1e-9);
    assert!(String::from_utf8_lossy(&o.stderr).contains("residual"));

    let o = run(&["energy", "--system", "pisb", "--state", "1s", "--rc", "1"]);
    assert!(rel(cell(&stdout(&o), "energy"), std::f64::consts::PI.powi(2) / 2.0) < 1e-11);

    let o = run(&["energy", "--system", "fho", "--state", "2p", "--omega", "1"]);
    assert_eq!(cell(&stdout(&o), "energy"), 4.5);
}

#[test]
fn fisher_queries() {
    let o = run(&["fisher", "--system", "cho", "--state", "1d", "--m", "2", "--rc", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("system,label,n_r,l,m,omega,rc,energy,I_r,I_p,I_t,bound_low,bound_high,route_residual\n"));
    assert!(rel(cell(&out, "I_r"), 7552.714578) < 1e-9);

    let out = stdout(&run(&["fisher", "--system", "fho", "--state", "1f", "--m", "3"]));
    assert_eq!(cell(&out, "I_r"), 6.0);
    assert_eq!(cell(&out, "I_p"), 6.0);

    let out = stdout(&run(&["fisher", "--system", "cho", "--state", "2p", "--m", "1", "--rc", "0.5"]));
    assert!(rel(cell(&out, "I_r"), 781.7758499) < 1e-9);
}

#[test]
fn omega2_matches_omega() {
    let a = stdout(&run(&["fisher", "--state", "1p", "--omega2", "4", "--rc", "1"]));
    let b = stdout(&run(&["fisher", "--state", "1p", "--omega", "2", "--rc", "1"]));
    assert_eq!(a, b);
    let o = run(&["fisher", "--state", "1p", "--omega2", "4", "--omega", "2", "--rc", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_rows_and_validation() {
    let o = run(&["sweep", "--state", "1s", "--rc", "0.1,0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 3);
    let i_r = |row: &str| row.split(',').nth(8).unwrap().parse::<f64>().unwrap();
    assert!(rel(i_r(rows[1]), 3947.84176) < 1e-9);
    assert!(rel(i_r(rows[2]), 157.913740) < 1e-8);

    let o = run(&["sweep", "--rc", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);

    let o = run(&["sweep", "--state", "1s", "--state", "2p:2", "--rc", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn sweep_rows_round_trip_through_fisher() {
    let out = stdout(&run(&["sweep", "--state", "1d:-1", "--state", "2s", "--omega2", "2", "--rc-log", "0.3:3:3"]));
    let mut lines = out.lines();
    let header = lines.next().unwrap();
    for row in lines {
        let f: Vec<&str> = row.split(',').collect();
        let single = stdout(&run(&[
            "fisher", "--system", f[0], "--state", f[1], "--m", f[4], "--omega", f[5], "--rc", f[6],
        ]));
        assert_eq!(single, format!("{header}\n{row}\n"));
    }
}

#[test]
fn bad_input_exit_codes() {
    assert_eq!(run(&["energy", "--state", "1x", "--rc", "1"]).status.code(), Some(2));
    assert_eq!(run(&["energy", "--state", "1s", "--rc", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["energy", "--state", "1s"]).status.code(), Some(2));
    assert_eq!(run(&["energy", "--system", "fho", "--state", "1s", "--rc", "2"]).status.code(), Some(2));
    assert_eq!(run(&["reproduce", "--target", "table9", "--out", "x"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("occupied");
    std::fs::write(&file, "x").unwrap();
    let o = run(&["reproduce", "--target", "table1", "--out", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn reproduce_is_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let o = run(&["reproduce", "--target", "table1", "--out", d.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let o = run(&["reproduce", "--target", "fig1", "--out", d.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    for f in ["table1.csv", "fig1.csv", "fig1_I_r.svg", "fig1_I_p.svg"] {
        let x = std::fs::read(a.path().join(f)).unwrap();
        assert_eq!(x, std::fs::read(b.path().join(f)).unwrap(), "{f}");
    }
    let t1 = std::fs::read_to_string(a.path().join("table1.csv")).unwrap();
    let cho_l0: Vec<&str> = t1.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&cho_l0[..2], ["cho", "0"]);
    assert!(rel(cho_l0[2].parse().unwrap(), 49348.02202373) < 1e-10);
    // run metadata lives beside the data
    let meta = std::fs::read_to_string(a.path().join("fig1.meta.json")).unwrap();
    assert!(meta.contains("\"target\": \"fig1\""));
    let fig = std::fs::read_to_string(a.path().join("fig1.csv")).unwrap();
    assert_eq!(fig.lines().count(), 1 + 5 * 41);
}

#[test]
fn tsv_output() {
    let o = run(&["fisher", "--state", "1s", "--rc", "1", "--format", "tsv"]);
    let out = stdout(&o);
    assert!(out.starts_with("system\tlabel\t"));
    assert!(!out.contains(','));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("numerics.conf");
    std::fs::write(&cfg, "# wider momentum grid\np_max = 250\n").unwrap();
    let o = run_env(&["fisher", "--state", "1s", "--rc", "7"], Some(&cfg));
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p_max 250."));
    let o = run_env(&["fisher", "--state", "1s", "--rc", "7", "--pmax", "300"], Some(&cfg));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p_max 300."));

    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(run_env(&["fisher", "--state", "1s", "--rc", "7"], Some(&cfg)).status.code(), Some(2));
    let missing = dir.path().join("missing.conf");
    assert_eq!(run_env(&["fisher", "--state", "1s", "--rc", "7"], Some(&missing)).status.code(), Some(2));
}
