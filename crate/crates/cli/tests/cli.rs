use std::path::Path;
use std::process::{Command, Output};

use euler_lax_cli::snapshot::{encode, read_snapshot};
use serde_json::Value;

fn euler_lax(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_euler-lax"))
        .arg("--out")
        .arg(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let cases: [(&[&str], i32); 7] = [
        (&["verify", "--suite", "unknown"], 2),
        (&["verify"], 2),
        (&["--set", "nonsense=1", "simulate"], 2),
        (&["--dt", "-1", "simulate"], 2),
        (&["--ic", "perturbed-shear", "transport"], 2),
        (
            &[
                "--ic", "shear", "--set", "beta=0", "--set", "trials=1", "verify", "--suite",
                "zakharov",
            ],
            1,
        ),
        (
            &[
                "--n",
                "32",
                "--set",
                "band=4",
                "--set",
                "trials=2",
                "verify",
                "--suite",
                "compatibility",
            ],
            0,
        ),
    ];
    for (args, code) in cases {
        let out = euler_lax(d, args);
        assert_eq!(
            out.status.code(),
            Some(code),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let out = euler_lax(
        d,
        &[
            "--ic", "shear", "--set", "beta=0", "verify", "--suite", "zakharov",
        ],
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("resonance"));
}

#[test]
fn stationary_simulation_returns_to_its_start() {
    let dir = tempfile::tempdir().unwrap();
    let out = euler_lax(
        dir.path(),
        &["--ic", "shear", "--n", "32", "--T", "1", "simulate"],
    );
    assert_eq!(out.status.code(), Some(0));
    let a = read_snapshot(&dir.path().join("snapshot_00000.laxf")).unwrap();
    let b = read_snapshot(&dir.path().join("snapshot_00001.laxf")).unwrap();
    assert_eq!(b.time, 1.0);
    let diff = a
        .omega
        .values()
        .iter()
        .zip(b.omega.values())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    assert!(diff <= 1e-10, "{diff}");
}

#[test]
fn simulation_is_byte_reproducible_and_snapshots_round_trip() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = [
        "--ic",
        "random-band",
        "--set",
        "ic.band=5",
        "--seed",
        "3",
        "--n",
        "32",
        "--T",
        "0.05",
        "simulate",
    ];
    assert_eq!(euler_lax(a.path(), &args).status.code(), Some(0));
    assert_eq!(euler_lax(b.path(), &args).status.code(), Some(0));
    let name = "snapshot_00001.laxf";
    let bytes = std::fs::read(a.path().join(name)).unwrap();
    assert_eq!(bytes, std::fs::read(b.path().join(name)).unwrap());
    let snap = read_snapshot(&a.path().join(name)).unwrap();
    assert_eq!(encode(snap.time, &snap.omega), bytes);
}

#[test]
fn diagnostics_table_has_exact_header_and_increasing_times() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--n",
        "32",
        "--T",
        "0.1",
        "--set",
        "snapshot_interval=0.02",
        "simulate",
    ];
    assert_eq!(euler_lax(dir.path(), &args).status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("diagnostics.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("time,energy,enstrophy,casimir3,casimir4")
    );
    let times: Vec<f64> = lines
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(times.len(), 6);
    assert!(times.windows(2).all(|w| w[1] > w[0]));
    assert!(dir.path().join("snapshot_00005.laxf").exists());
}

#[test]
fn report_embeds_a_replayable_config() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--n", "32", "--seed", "9", "--set", "band=4", "--set", "trials=3", "verify", "--suite",
        "bracket",
    ];
    assert_eq!(euler_lax(dir.path(), &args).status.code(), Some(0));
    let first = report(&dir.path().join("verify-bracket.json"));
    assert_eq!(first["name"], "bracket");
    assert_eq!(first["checks"].as_array().unwrap().len(), 15);
    assert_eq!(first["controls"][0]["passed"], false);

    let cfg = euler_lax_cli::commands::config_from_report(&dir.path().join("verify-bracket.json"))
        .unwrap();
    let replay = tempfile::tempdir().unwrap();
    let file = replay.path().join("replay.cfg");
    std::fs::write(&file, cfg.to_text()).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_euler-lax"))
        .args([
            "--config",
            file.to_str().unwrap(),
            "--out",
            replay.path().to_str().unwrap(),
            "verify",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let second = report(&replay.path().join("verify-bracket.json"));
    assert_eq!(first["checks"], second["checks"]);
}

#[test]
fn zero_vorticity_spectrum_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--ic", "zero", "--n", "32", "--K", "4", "--T", "0.1", "spectrum",
    ];
    assert_eq!(euler_lax(dir.path(), &args).status.code(), Some(0));
    let doc = report(&dir.path().join("spectrum.json"));
    for sample in doc["spectra"].as_array().unwrap() {
        for pair in sample["eigenvalues"].as_array().unwrap() {
            assert_eq!(pair[0].as_f64(), Some(0.0));
            assert_eq!(pair[1].as_f64(), Some(0.0));
        }
    }
}

#[test]
fn zero_eigenvalue_transport_passes() {
    let dir = tempfile::tempdir().unwrap();
    // sorted by Im λ, the middle of the shear spectrum is the λ = 0 block
    let args = [
        "--ic",
        "shear",
        "--n",
        "32",
        "--K",
        "4",
        "--set",
        "mode_index=40",
        "--dt",
        "0.01",
        "transport",
    ];
    let out = euler_lax(dir.path(), &args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let doc = report(&dir.path().join("transport.json"));
    assert!(doc["lambda"][1].as_f64().unwrap().abs() < 1e-14);
    assert!(doc["checks"][0]["relative"].as_f64().unwrap() <= 1e-10);
}
