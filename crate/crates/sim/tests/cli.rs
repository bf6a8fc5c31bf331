//! End-to-end runs of the `relay-secrecy` binary.

use std::path::Path;
use std::process::{Command, Output};

use relay_secrecy_sim::{parse_config, ExperimentSpec, Preset};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_relay-secrecy"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn read_rows(path: &Path) -> Vec<csv::StringRecord> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.records().map(|x| x.unwrap()).collect()
}

#[test]
fn fig4_analytic_curve_flattens_at_high_snr() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig4.csv");
    let o = run(&[
        "--preset",
        "fig4",
        "--trials",
        "0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = read_rows(&out);
    assert_eq!(rows.len(), 9);
    let c: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    let (a, b) = (c[c.len() - 2], c[c.len() - 1]);
    assert!((b - a).abs() / b < 0.01, "25 dB {a} vs 30 dB {b}");
    assert!(c.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn manifest_is_written_and_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run.csv");
    let o = run(&[
        "--preset",
        "fig3",
        "--trials",
        "0",
        "--seed",
        "11",
        "--snr-db",
        "-5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest = dir.path().join("run.manifest");
    let spec = parse_config(&manifest).unwrap();
    let expected = ExperimentSpec {
        trials: 0,
        seed: 11,
        params: Preset::Fig3.spec().params.with_snr_db(-5.0),
        ..Preset::Fig3.spec()
    };
    assert_eq!(spec, expected);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    std::fs::write(
        &cfg,
        "# sweep over antennas\nsweep=n_r:16:64:16\ntrials=0\nseed=3\n",
    )
    .unwrap();
    let out = dir.path().join("exp.csv");
    let o = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "9",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = read_rows(&out);
    let n: Vec<&str> = rows.iter().map(|r| r.get(0).unwrap()).collect();
    assert_eq!(n, ["16", "32", "48", "64"]);
    assert!(rows.iter().all(|r| &r[8] == "9"));
}

#[test]
fn stdout_mode_prints_csv_and_manifest() {
    let o = run(&["--preset", "custom", "--trials", "0"]);
    assert!(o.status.success());
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.starts_with("snr_db,c_soc_analytic,"), "{stdout}");
    assert_eq!(stdout.lines().count(), 5);
    let stderr = String::from_utf8(o.stderr).unwrap();
    assert!(stderr.contains("# preset=custom"));
}

#[test]
fn invalid_inputs_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let bad_cfg = dir.path().join("bad.cfg");
    std::fs::write(&bad_cfg, "epsilon=1.5\n").unwrap();
    let unwritable = dir.path().join("missing-dir").join("out.csv");
    let cases: Vec<Vec<&str>> = vec![
        vec!["--preset", "fig9"],
        vec!["--config", bad_cfg.to_str().unwrap()],
        vec!["--config", "/no/such/file.cfg"],
        vec!["--trials", "50"],
        vec!["--sweep", "alpha_re:2:1:0.1", "--trials", "0"],
        vec!["--trials", "0", "--out", unwritable.to_str().unwrap()],
    ];
    for args in cases {
        let o = run(&args);
        assert!(!o.status.success(), "{args:?} should fail");
        assert!(!o.stderr.is_empty(), "{args:?} should explain the failure");
    }
}

#[test]
fn output_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let csv_for = |name: &str, workers: &str| {
        let out = dir.path().join(name);
        let o = run(&[
            "--preset",
            "fig3",
            "--trials",
            "10000",
            "--sweep",
            "alpha_re:1:2:0.5",
            "--workers",
            workers,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(out).unwrap()
    };
    let a = csv_for("a.csv", "1");
    let b = csv_for("b.csv", "1");
    let c = csv_for("c.csv", "4");
    assert_eq!(a, b);
    assert_eq!(a, c);
}
