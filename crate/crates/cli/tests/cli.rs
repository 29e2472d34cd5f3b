// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn frqme(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frqme"))
        .args(args)
        .current_dir(cwd)
        .env_remove("FRQME_OUTPUT_ROOT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn fidelity_in(summary: &str) -> f64 {
    let tail = summary.split("F = ").nth(1).expect("summary has F");
    tail.split_whitespace()
        .next()
        .unwrap()
        .trim_end_matches(',')
        .parse()
        .unwrap()
}

const QUICK: [&str; 6] = [
    "--set",
    "grape.n_steps=4",
    "--set",
    "grape.max_iterations=30",
    "--set",
    "grape.substeps=8",
];

#[test]
fn states_table_lists_bloch_vectors() {
    let dir = tempfile::tempdir().unwrap();
    let o = frqme(&["states"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let row = |label: &str| -> Vec<f64> {
        let line = out.lines().find(|l| l.starts_with(label)).unwrap();
        let cols: Vec<&str> = line.split_whitespace().collect();
        cols[cols.len() - 3..]
            .iter()
            .map(|v| v.parse().unwrap())
            .collect()
    };
    let s = row("+S");
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((s[0] - h).abs() < 1e-7 && s[1] == 0.0 && (s[2] - h).abs() < 1e-7);
    assert_eq!(row("+Y"), vec![0.0, 1.0, 0.0]);
    assert_eq!(row("-X"), vec![-1.0, 0.0, 0.0]);
    assert_eq!(out.lines().count(), 9);
}

#[test]
fn dissipation_free_optimization_reaches_unit_fidelity() {
    let dir = tempfile::tempdir().unwrap();
    let o = frqme(
        &["optimize", "+Z", "-X", "--dissipation-free", "--out", "run"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let f = fidelity_in(&stdout(&o));
    assert!(f > 1.0 - 1e-6, "{f}");
    for name in ["pulse.json", "trajectory.csv", "report.json"] {
        assert!(dir.path().join("run").join(name).exists(), "{name}");
    }

    // the written pulse propagates to the same fidelity
    let o = frqme(
        &[
            "propagate",
            "+Z",
            "-X",
            "--dissipation-free",
            "--pulse",
            "run/pulse.json",
            "--out",
            "prop",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!((fidelity_in(&stdout(&o)) - f).abs() < 1e-12);

    // reusing the directory needs --force
    let o = frqme(
        &["optimize", "+Z", "-X", "--dissipation-free", "--out", "run"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(4));
    let o = frqme(
        &[
            "optimize",
            "+Z",
            "-X",
            "--dissipation-free",
            "--out",
            "run",
            "--force",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn invalid_label_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = frqme(&["optimize", "+Q", "-X"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("+Z, -Z, +X, -X, +Y, -Y, +S, +R"), "{err}");
}

#[test]
fn population_completion_and_conflicts() {
    let dir = tempfile::tempdir().unwrap();
    let o = frqme(
        &["optimize", "--set", "params.p1=0.7", "--print-config"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["params"]["p2"].as_f64().unwrap() - 0.3).abs() < 1e-12);
    assert_eq!(v["params"]["omega_ratio"], 572.3);
    assert_eq!(v["params"]["chi"], 0.033);

    let o = frqme(
        &[
            "optimize",
            "--set",
            "params.p1=0.7",
            "--set",
            "params.p2=0.7",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_keys_are_rejected_with_their_path() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c.json"), r#"{"grape": {"n_stepz": 3}}"#).unwrap();
    let o = frqme(&["optimize", "--config", "c.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("grape") && err.contains("n_stepz"), "{err}");
    let o = frqme(&["optimize", "--config", "missing.json"], dir.path());
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn printed_config_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let o = frqme(
        &[
            "sweep-detuning",
            "+S",
            "+R",
            "--seed",
            "7",
            "--workers",
            "2",
            "--print-config",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let first = stdout(&o);
    fs::write(dir.path().join("c.json"), &first).unwrap();
    let o = frqme(
        &["sweep-detuning", "--config", "c.json", "--print-config"],
        dir.path(),
    );
    assert_eq!(stdout(&o), first);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["grape"]["seed"], 7);
    assert_eq!(v["sweep"]["axes"][0]["count"], 61);
}

#[test]
fn sweep_outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = vec![
        "sweep-time",
        "+X",
        "-X",
        "--set",
        r#"sweep.axes=[{"param":"dt","min":0.2,"max":0.4,"count":3,"spacing":"linear"}]"#,
    ];
    args.extend(QUICK);
    let run = |out: &str| {
        let mut a = args.clone();
        a.extend(["--out", out]);
        let o = frqme(&a, dir.path());
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        stdout(&o)
    };
    let summary = run("a");
    assert!(summary.contains("3/3 points ok"), "{summary}");
    run("b");
    for name in [
        "sweep_time.csv",
        "points/point_0002.json",
        "points/point_0000_bloch.csv",
    ] {
        let x = fs::read(dir.path().join("a").join(name)).unwrap();
        let y = fs::read(dir.path().join("b").join(name)).unwrap();
        assert_eq!(x, y, "{name}");
    }
    let strip = |p: &str, file: &str, key: &str| -> String {
        fs::read_to_string(dir.path().join(p).join(file))
            .unwrap()
            .lines()
            .filter(|l| !l.contains(key))
            .collect()
    };
    assert_eq!(
        strip("a", "index.json", "\"created\""),
        strip("b", "index.json", "\"created\"")
    );
    assert_eq!(
        strip("a", "config.json", "\"dir\""),
        strip("b", "config.json", "\"dir\"")
    );
    let csv = fs::read_to_string(dir.path().join("a/sweep_time.csv")).unwrap();
    assert!(csv.starts_with("total_time,fidelity,status\n"));
}

#[test]
fn output_root_comes_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = vec![
        "optimize",
        "+Z",
        "-Z",
        "--dissipation-free",
        "--label",
        "envtest",
    ];
    args.extend(QUICK);
    let o = Command::new(env!("CARGO_BIN_EXE_frqme"))
        .args(&args)
        .current_dir(dir.path())
        .env("FRQME_OUTPUT_ROOT", dir.path().join("root"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let entries: Vec<String> = fs::read_dir(dir.path().join("root"))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert_eq!(entries.len(), 1);
    assert!(entries[0].ends_with("_envtest"), "{entries:?}");
}

#[test]
fn documented_example_configs_resolve() {
    let dir = tempfile::tempdir().unwrap();
    let examples = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples");
    let mut seen = 0;
    for entry in fs::read_dir(&examples).unwrap() {
        let path = entry.unwrap().path();
        let cmd = path.file_stem().unwrap().to_string_lossy().into_owned();
        let file = path.display().to_string();
        let o = frqme(&[&cmd, "--config", &file, "--print-config"], dir.path());
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", stderr(&o));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["command"], cmd.as_str());
        seen += 1;
    }
    assert_eq!(seen, 6);
}
