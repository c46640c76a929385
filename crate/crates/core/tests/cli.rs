use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use dunkl_pauli::cli::{RunConfig, FIGURE_FILES, OUT_DIR_ENV};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_dunkl-pauli"));
    c.env_remove(OUT_DIR_ENV);
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Parses a CSV body into its header and numeric columns by name.
fn columns(body: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = body.lines();
    let header: Vec<String> = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_owned)
        .collect();
    let mut cols = vec![Vec::new(); header.len()];
    for line in lines {
        for (c, v) in cols.iter_mut().zip(line.split(',')) {
            c.push(v.parse().unwrap_or(f64::NAN));
        }
    }
    (header, cols)
}

#[test]
fn default_spectrum_has_header() {
    let o = run(&["spectrum"]);
    assert!(o.status.success());
    let body = stdout(&o);
    assert_eq!(
        body.lines().next().unwrap(),
        "n,l,m_s,branch,K_minus,K_plus,energy_over_omega"
    );
    assert!(body.lines().count() > 10);
}

#[test]
fn spectrum_matches_energy_oracle() {
    let o = run(&[
        "spectrum", "--sector", "+1", "--theta", "0.5", "--cutoff", "20",
    ]);
    assert!(o.status.success());
    let (header, cols) = columns(&stdout(&o));
    let idx = header
        .iter()
        .position(|h| h == "energy_over_omega")
        .unwrap();
    let got = &cols[idx];

    // undeformed even sector: K+ = 2l - theta m_s, E = 2n + K+ + 1
    let theta = 0.5;
    let mut want = Vec::new();
    for l in 1..20 {
        for ms in [1.0, -1.0] {
            let k = 2.0 * f64::from(l) - theta * ms;
            if k <= -1.0 {
                continue;
            }
            for n in 0..20 {
                let e = 2.0 * f64::from(n) + k + 1.0;
                if e <= 20.0 {
                    want.push(e);
                }
            }
        }
    }
    want.sort_by(f64::total_cmp);
    assert_eq!(got.len(), want.len());
    for (g, w) in got.iter().zip(&want) {
        assert!((g - w).abs() < 1e-12, "{g} vs {w}");
    }
}

#[test]
fn constraint_violation_exits_2() {
    let o = run(&[
        "spectrum", "--sector", "+1", "--nu1", "0.4", "--nu2", "0.4", "--theta", "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(
        run(&["thermo", "--tmin", "5", "--tmax", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["spectrum", "--sector", "3"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn figures_have_shared_entropy_and_dulong_petit() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["figures", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for f in FIGURE_FILES {
        assert!(dir.path().join(f).is_file(), "{f}");
    }

    let (header, cols) = columns(&fs::read_to_string(dir.path().join("entropy.csv")).unwrap());
    assert_eq!(header[0], "T");
    assert!(
        header.iter().any(|h| h.contains("eps=+1")) && header.iter().any(|h| h.contains("eps=-1"))
    );
    for theta in ["-0.4", "0", "0.5", "1"] {
        let tag = format!("theta={theta}]");
        let same_theta: Vec<usize> = (1..header.len())
            .filter(|&i| header[i].ends_with(&tag))
            .collect();
        assert!(same_theta.len() >= 2, "{tag}");
        for &i in &same_theta[1..] {
            assert_eq!(cols[i], cols[same_theta[0]], "{}", header[i]);
        }
    }

    let (header, cols) =
        columns(&fs::read_to_string(dir.path().join("heat_capacity.csv")).unwrap());
    for c in &cols[1..header.len()] {
        let last = *c.last().unwrap();
        assert!((last - 2.0).abs() < 1e-3, "{last}");
    }
}

#[test]
fn verify_passes_and_detects_injected_offset() {
    let good = tempfile::tempdir().unwrap();
    let o = run(&["verify", "--out", good.path().to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    for f in [
        "verify_report.csv",
        "angular_report.csv",
        "radial_report.csv",
        "e0_adjudication.csv",
    ] {
        assert!(good.path().join(f).is_file(), "{f}");
    }
    let e0 = fs::read_to_string(good.path().join("e0_adjudication.csv")).unwrap();
    let header = e0.lines().next().unwrap();
    assert!(header.contains("e0_paper") && header.contains("e0_enumerated"));
    assert!(e0.lines().skip(1).any(|l| l.starts_with("-1,")));

    let bad = tempfile::tempdir().unwrap();
    let o = run(&[
        "verify",
        "--out",
        bad.path().to_str().unwrap(),
        "--inject-energy-offset",
        "1e-3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let report = fs::read_to_string(bad.path().join("verify_report.csv")).unwrap();
    let failed: Vec<&str> = report.lines().filter(|l| l.ends_with(",fail")).collect();
    assert!(!failed.is_empty());
    assert!(
        failed.iter().all(|l| l.contains("analytic_ode_residual")),
        "{failed:?}"
    );
}

fn read_all(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().into_string().unwrap(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    v.sort();
    v
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let out = d.path().to_str().unwrap();
        assert!(run(&["figures", "--out", out, "--tsteps", "31"])
            .status
            .success());
        let sweep = d.path().join("sweep.json");
        let args = [
            "sweep", "--sector", "-1", "--nus", "0,0.5", "--thetas", "-0.4,1", "--format", "json",
        ];
        let o = bin().args(args).arg("--out").arg(&sweep).output().unwrap();
        assert!(o.status.success());
    }
    assert_eq!(read_all(a.path()), read_all(b.path()));
}

#[test]
fn dump_config_round_trips() {
    let o = run(&[
        "thermo",
        "--sector",
        "odd",
        "--nu1",
        "0.3",
        "--theta",
        "-0.4",
        "--dump-config",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let cfg = RunConfig::from_json(&text).unwrap();
    assert_eq!(cfg.params.nu1, 0.3);
    assert_eq!(cfg.params.nu2, 0.3);
    assert_eq!(cfg.params.theta, -0.4);
    assert_eq!(cfg.to_json().trim(), text.trim());
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .env(OUT_DIR_ENV, dir.path())
        .args([
            "thermo", "--theta", "0.5", "--tsteps", "11", "--format", "json",
        ])
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("thermo.json")).unwrap()).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["rows"].as_array().unwrap().len(), 11);
    assert_eq!(json["e0_mode"], "enumerated");
}
