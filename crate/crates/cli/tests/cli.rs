use std::path::Path;
use std::process::{Command, Output};

use rgsslab_cli::runner;
use rgsslab_cli::Scenario;

const BIN: &str = env!("CARGO_BIN_EXE_rgsslab");

const BURGERS: &str = r#"
schema = "rgsslab.scenario/1"
kind = "burgers"
seed = 7
[params]
a = 1.0
nu = 0.5
profile = "gaussian"
"#;

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn rgsslab(args: &[&str], threads: Option<&str>) -> Output {
    let mut c = Command::new(BIN);
    c.args(args);
    match threads {
        Some(n) => c.env("RGSSLAB_THREADS", n),
        None => c.env_remove("RGSSLAB_THREADS"),
    };
    c.output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// CSV text with the wall-time column removed.
fn without_ms(csv: &str) -> String {
    csv.lines().map(|l| l.rsplit_once(',').map_or(l, |(head, _)| head)).collect::<Vec<_>>().join("\n")
}

#[test]
fn burgers_gaussian_passes_with_rows() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "b.toml", BURGERS);
    let out = dir.path().join("out/report.csv");
    let o = rgsslab(&["run", "--scenario", sc.to_str().unwrap(), "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "check_id,probe,measured,reference,residual,tolerance,pass,ms");
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() >= 4, "{} rows", rows.len());
    assert!(rows.iter().all(|r| r.split(',').nth(6) == Some("true")));
}

#[test]
fn output_key_and_json_format() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!("output = \"r.json\"\n{BURGERS}");
    write(dir.path(), "b.toml", &text);
    // A relative `output` is relative to the working directory.
    let o = Command::new(BIN).current_dir(dir.path()).args(["run", "--scenario", "b.toml"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(v["schema"], "rgsslab.report/1");
    let checks = v["scenarios"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| !c["operation"].as_str().unwrap().is_empty()));
}

#[test]
fn missing_nu_exits_2_naming_key() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "b.toml", &BURGERS.replace("nu = 0.5\n", ""));
    let o = rgsslab(&["run", "--scenario", sc.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`nu`"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn zero_tolerance_rejected_before_running() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!("{BURGERS}\n[[checks]]\nid = \"burgers.fs_r5\"\ntolerance = 0.0\n");
    let sc = write(dir.path(), "b.toml", &text);
    let o = rgsslab(&["run", "--scenario", sc.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("tolerance"), "{}", stderr(&o));
    // No summary table: nothing ran.
    assert!(!stderr(&o).contains("checks passed"));
}

#[test]
fn malformed_and_unknown_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.toml", "schema = \"rgsslab.scenario/1\"\nkind = [");
    assert_eq!(rgsslab(&["run", "--scenario", bad.to_str().unwrap()], None).status.code(), Some(2));
    let other = write(dir.path(), "o.toml", &BURGERS.replace("scenario/1", "scenario/9"));
    assert_eq!(rgsslab(&["run", "--scenario", other.to_str().unwrap()], None).status.code(), Some(2));
    let unk = write(dir.path(), "u.toml", &format!("{BURGERS}\n[[checks]]\nid = \"plasma.q_oracle\"\n"));
    let o = rgsslab(&["run", "--scenario", unk.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("plasma.q_oracle"));
    assert_eq!(rgsslab(&["verify", "--suite", "slow"], None).status.code(), Some(2));
}

#[test]
fn failing_check_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!("{BURGERS}\n[[checks]]\nid = \"burgers.fd_oracle\"\ntolerance = 1e-12\n");
    let sc = write(dir.path(), "b.toml", &text);
    let o = rgsslab(&["run", "--scenario", sc.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    let csv = String::from_utf8(o.stdout).unwrap();
    assert!(csv.lines().skip(1).all(|l| l.split(',').nth(6) == Some("false")), "{csv}");
}

const PLASMA_FAST: &str = r#"
schema = "rgsslab.scenario/1"
kind = "plasma"
seed = 3
[params]
regime = "cold"
a = 0.5
fault = "FAULT"
[[checks]]
id = "plasma.pde_residual"
[[checks]]
id = "plasma.q_oracle"
[[checks]]
id = "plasma.airy_oracle"
[[checks]]
id = "plasma.scorer_oracle"
"#;

#[test]
fn corrupted_special_table_fails_plasma_only() {
    let plasma = Scenario::parse(&PLASMA_FAST.replace("FAULT", "special-table"), "plasma-bad").unwrap();
    let burgers = Scenario::parse(BURGERS, "burgers").unwrap();
    let report = runner::run(&[burgers, plasma]);
    assert!(!report.pass());
    let [b, p] = &report.scenarios[..] else { panic!("two scenarios") };
    assert!(b.pass(), "burgers must still be reported and pass");
    assert!(!b.rows.is_empty());
    for c in &p.checks {
        let special = c.check_id != "plasma.pde_residual";
        assert_eq!(c.pass, !special, "{}", c.check_id);
        assert!(c.error.is_none());
    }

    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "p.toml", &PLASMA_FAST.replace("FAULT", "special-table"));
    let o = rgsslab(&["run", "--scenario", sc.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn panicking_check_is_isolated() {
    let plasma = Scenario::parse(&PLASMA_FAST.replace("FAULT", "panic"), "plasma-panic").unwrap();
    let report = runner::run_scenario(&plasma);
    let s = &report.scenarios[0];
    assert_eq!(s.checks.len(), 4);
    for c in &s.checks {
        if c.check_id == "plasma.pde_residual" {
            assert!(!c.pass);
            assert!(c.error.as_deref().unwrap().contains("panic"));
        } else {
            assert!(c.pass, "{}", c.check_id);
        }
    }
    let row = s.rows.iter().find(|r| r.check_id == "plasma.pde_residual").unwrap();
    assert!(row.residual.is_nan() && !row.pass);
}

#[test]
fn same_seed_gives_identical_report() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"
schema = "rgsslab.scenario/1"
kind = "rgflow"
seed = 11
[params]
beta = ["kg", "g2+0.3g3"]
samples = 100
"#;
    let sc = write(dir.path(), "r.toml", text);
    let a = rgsslab(&["run", "--scenario", sc.to_str().unwrap()], Some("1"));
    let b = rgsslab(&["run", "--scenario", sc.to_str().unwrap()], Some("4"));
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let (a, b) = (String::from_utf8(a.stdout).unwrap(), String::from_utf8(b.stdout).unwrap());
    assert_eq!(without_ms(&a), without_ms(&b));

    let other = write(dir.path(), "r2.toml", &text.replace("seed = 11", "seed = 12"));
    let c = String::from_utf8(rgsslab(&["run", "--scenario", other.to_str().unwrap()], None).stdout).unwrap();
    assert_ne!(without_ms(&a), without_ms(&c));
}

#[test]
fn report_command_writes_requested_format() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "b.toml", BURGERS);
    let out = dir.path().join("r.json");
    let o = rgsslab(
        &["report", "--format", "json", "--out", out.to_str().unwrap(), "--scenario", sc.to_str().unwrap()],
        None,
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert!(v["scenarios"][0]["rows"].as_array().unwrap().len() >= 4);
}
