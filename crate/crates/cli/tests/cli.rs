use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_opentomo"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn sweep_to(dir: &Path, name: &str, extra: &[&str]) -> String {
    let out = dir.join(format!("{name}.csv"));
    let o = run(bin()
        .args(["sweep", "--config"])
        .arg(config(&format!("{name}.json")))
        .args(extra)
        .arg("--out")
        .arg(&out));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    fs::read_to_string(out).unwrap()
}

#[test]
fn verify_all_exits_zero() {
    let o = run(bin().arg("verify"));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(o.status.success(), "{stdout}");
    assert!(stdout.contains("sgad/analytic-vs-rk4"));
    assert!(stdout.contains("qutrit/closed-form-normalization"));
    assert!(stdout.trim_end().ends_with("failed") && stdout.contains(", 0 failed"));
    for line in stdout.lines().skip(1).filter(|l| l.contains('/')) {
        assert_eq!(line.split('\t').count(), 4, "{line}");
    }
}

#[test]
fn verify_single_scenario_and_unknown() {
    let o = run(bin().args(["verify", "qutrit"]));
    assert!(o.status.success());
    assert!(!String::from_utf8_lossy(&o.stdout).contains("sgad/"));
    assert_eq!(run(bin().args(["verify", "laser"])).status.code(), Some(2));
}

#[test]
fn sweeps_are_byte_identical_across_runs_and_execution_modes() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["qnd_time", "sgad_time", "two_qubit_spacing", "spin1_beta", "qutrit_time", "optical_x"] {
        let first = sweep_to(dir.path(), name, &["--set", "execution=parallel"]);
        let again = sweep_to(dir.path(), name, &["--set", "execution=parallel"]);
        let serial = sweep_to(dir.path(), name, &["--set", "execution=serial"]);
        assert_eq!(first, again, "{name}");
        assert_eq!(first, serial, "{name}");
        assert!(first.starts_with("# opentomo sweep\n# units: hbar = k_B = 1\n"));
    }
}

#[test]
fn overrides_change_the_record() {
    let dir = tempfile::tempdir().unwrap();
    let csv = sweep_to(dir.path(), "qutrit_time", &["--set", "params.eta1=3", "--set", "axis.count=3"]);
    assert!(csv.contains("\"eta1\":3.0"));
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 4);
}

#[test]
fn config_out_path_is_used_when_flag_is_absent() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(bin().current_dir(dir.path()).args(["sweep", "--config"]).arg(config("qutrit_time.json")));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("qutrit_time.csv").exists());
    let o = run(bin().args(["sweep", "--config"]).arg(config("qnd_time.json")));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_configs_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"scenario":"qnd","axis":{"name":"t","start":-1,"stop":1,"count":5}}"#).unwrap();
    let o = run(bin().args(["sweep", "--config"]).arg(&path).arg("--out").arg(dir.path().join("x.csv")));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("time must be"));
}

#[test]
fn point_prints_components() {
    let o = run(bin().args(["point", "--scenario", "qnd", "--t", "0"]));
    assert!(o.status.success());
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("w_up = 6.12071"), "{stdout}");
    let o = run(bin().args(["point", "--scenario", "qutrit", "--set", "t=0"]));
    assert!(String::from_utf8_lossy(&o.stdout).contains("w_0 = 8.3333333333333337e-1"));
    let o = run(bin().args(["point", "--scenario", "spin1", "--t", "1"]));
    assert_eq!(o.status.code(), Some(2));
}
