use std::path::Path;
use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_milburn-lab"))
        .args(args)
        .output()
        .expect("spawn milburn-lab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn evolve_csv_header_and_rows() {
    let o = lab(&["evolve", "--t-max", "1", "--dt-sample", "0.5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines, ["t,concurrence,min_hs,min_trace,purity", "0,1,0.5,1,1", lines[2], lines[3]]);
    assert!(lines[3].starts_with("1,"));
}

#[test]
fn elements_and_json() {
    let o = lab(&["evolve", "--t-max", "0.2", "--dt-sample", "0.1", "--outputs", "correlations,elements", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0].as_object().unwrap().len(), 13);
    assert_eq!(rows[0]["re_r14"], 0.5);
}

#[test]
fn repeated_runs_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = lab(&["evolve", "--scenario", "prod00", "--p", "0.6", "--engine", "kraus", "--t-max", "30", "--out", path.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(path).unwrap()
    };
    assert_eq!(run("a.csv"), run("b.csv"));
}

#[test]
fn jobs_do_not_change_output() {
    let one = lab(&["--jobs", "1", "evolve", "--scenario", "bell-psi", "--t-max", "10"]);
    let four = lab(&["--jobs", "4", "evolve", "--scenario", "bell-psi", "--t-max", "10"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "scenario = bell-psi\ngamma = 0.1\nt_max = 5\n").unwrap();
    let o = lab(&["validate", "--config", cfg.to_str().unwrap(), "--gamma", "0.3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["params"]["gamma"], 0.3);
    assert_eq!(v["scenario"]["kind"], "bell-psi");
    assert_eq!(v["t_max"], 5.0);
}

#[test]
fn exit_codes() {
    assert_eq!(lab(&["evolve", "--gamma", "-1"]).status.code(), Some(2));
    assert_eq!(lab(&["evolve", "--scenario", "ghz"]).status.code(), Some(2));
    assert_eq!(lab(&["evolve", "--bogus"]).status.code(), Some(2));
    let singular = lab(&["evolve", "--engine", "xclosed", "--jp", "0", "--dm", "0", "--t-max", "1"]);
    assert_eq!(singular.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&singular.stderr).contains("spectral"));
    assert_eq!(lab(&["steady", "--gamma", "0"]).status.code(), Some(3));
    let missing = lab(&["evolve", "--out", "/nonexistent-dir/x.csv", "--t-max", "1"]);
    assert_eq!(missing.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/nonexistent-dir/x.csv"));
    assert_eq!(lab(&["evolve", "--config", "/nonexistent.cfg"]).status.code(), Some(4));
}

#[test]
fn steady_reference_flags_discrepancies() {
    let o = lab(&["steady", "--reference"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("concurrence,0.2\n"));
    assert!(text.contains("min_hs,0.02\n"));
    assert!(text.contains("C reference 0.2 derived 0.200000 -> agrees"));
    assert!(text.contains("N2 reference 0.025 derived 0.020000 -> DISCREPANCY"));
}

#[test]
fn spectrum_and_sweep() {
    let o = lab(&["spectrum"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 5);

    let o = lab(&["sweep", "--scenario", "prod00", "--grid", "field=0,1,2", "--grid", "gamma=0.05,0.1", "--t-max", "20"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert!(lines[0].starts_with("field,gamma,steady_concurrence"));
    assert!(lines[1].starts_with("0,0.05,"));
    assert!(lines[2].starts_with("0,0.1,"));
    assert!(lines[6].starts_with("2,0.1,"));
}

#[test]
fn figure_writes_panels() {
    let dir = tempfile::tempdir().unwrap();
    let o = lab(&["figure", "1", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    for f in ["fig1_top.csv", "fig1_bottom.csv"] {
        let got = std::fs::read(dir.path().join(f)).unwrap();
        let golden = std::fs::read(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(f)).unwrap();
        assert_eq!(got, golden, "{f}");
    }
    assert_eq!(lab(&["figure", "6"]).status.code(), Some(2));
}
