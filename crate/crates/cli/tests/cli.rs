use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn conetop(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conetop"))
        .args(args)
        .arg("--out-dir")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn classify_examples() {
    let dir = tempfile::tempdir().unwrap();
    for (y, want) in [
        ("1,0,0,0", "ChronoFuture q=1"),
        ("1,1,0,0", "HorismosFuture q=0"),
        ("0,1,0,0", "Spacelike q=-1"),
    ] {
        let o = conetop(&["classify", "--x", "0,0,0,0", "--y", y], dir.path());
        assert!(o.status.success());
        assert!(stdout(&o).starts_with(want), "{y}: {}", stdout(&o));
    }
    let o = conetop(&["classify", "--x", "-1,0", "--y", "-2,0.5"], dir.path());
    assert!(stdout(&o).starts_with("ChronoPast q=0.75"), "{}", stdout(&o));
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["classify", "--x", "0,0,a", "--y", "1,0,0"][..],
        &["classify", "--x", "0,0", "--y", "1,0,0"],
        &["classify", "--x", "0,0,0,0,0", "--y", "1,0,0,0,0"],
        &["nbhd-render", "--kind", "zt", "--plane", "0,0"],
        &["nbhd-render", "--kind", "zt", "--plane", "0,7"],
        &["nbhd-render", "--kind", "nonsense"],
        &["props-run", "--suites", "nope"],
        &["no-such-command"],
    ] {
        let o = conetop(args, dir.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn bad_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    for text in [
        r#"{"spatial_dim": 7}"#,
        r#"{"unknown": 1}"#,
        "not json",
        r#"{"topologies": ["zq"]}"#,
    ] {
        fs::write(&cfg, text).unwrap();
        let o = conetop(&["kernel-verify", "--config", cfg.to_str().unwrap()], dir.path());
        assert_eq!(o.status.code(), Some(2), "{text}");
    }
}

#[test]
fn kernel_verify_reports_all_trials() {
    let dir = tempfile::tempdir().unwrap();
    let o = conetop(&["kernel-verify", "--seed", "42"], dir.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "lemma1: 1000/1000 pass");
    let json = fs::read_to_string(dir.path().join("kernel.json")).unwrap();
    assert!(json.contains("\"seed\": 42"));
}

#[test]
fn config_file_and_flags_land_in_the_header() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"seed": 5, "props": {"kernel_trials": 12}}"#).unwrap();
    let o = conetop(
        &["kernel-verify", "--config", cfg.to_str().unwrap(), "--seed", "9"],
        dir.path(),
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "lemma1: 12/12 pass");
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("kernel.json")).unwrap()).unwrap();
    let header = &v["header"];
    assert_eq!(header["seed"], 9);
    assert_eq!(header["config"]["props"]["kernel_trials"], 12);
    // defaults are echoed too
    assert_eq!(header["config"]["horizon"]["n_max"], 256);
    assert_eq!(header["config"]["tolerance"], 1e-9);
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let o = conetop(
        &[
            "nbhd-render",
            "--kind",
            "zs-dash",
            "--resolution",
            "64",
            "--output",
            "zsd.svg",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = fs::read_to_string(dir.path().join("zsd.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<rect"));
}

#[test]
fn converge_matrix_matches_discriminators() {
    let dir = tempfile::tempdir().unwrap();
    let o = conetop(&["converge"], dir.path());
    assert!(o.status.success());
    let csv = fs::read_to_string(dir.path().join("converge_matrix.csv")).unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let null: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(null[0], "null");
    let at = |k: &str| null[header.iter().position(|h| *h == k).unwrap()];
    assert_eq!(at("zt-dash"), "accepted");
    assert_eq!(at("zs-dash"), "accepted");
    assert_eq!(at("manifold"), "accepted");
    for k in ["zt", "zs", "z", "int-horismos", "int-causal", "int-spacelike"] {
        assert_eq!(at(k), "refuted", "{k}");
    }
}

#[test]
fn props_subset_writes_one_file_per_suite() {
    let dir = tempfile::tempdir().unwrap();
    let o = conetop(&["props-run", "--suites", "lemma1,traces"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for f in [
        "props-lemma1.json",
        "props-lemma1.csv",
        "props-traces.json",
        "props.json",
        "props.csv",
    ] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
}

#[test]
fn violations_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    // a band this wide calls every displacement null
    fs::write(&cfg, r#"{"tolerance": 1e6}"#).unwrap();
    let o = conetop(
        &[
            "props-run",
            "--suites",
            "discriminators",
            "--config",
            cfg.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}
