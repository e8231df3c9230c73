use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use kg_floquet_cli::parallel::Pool;
use kg_floquet_cli::{commands, output, RunConfig};
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kg-floquet"))
}

fn config_file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn sine_gordon_toml(c: f64, e: f64) -> String {
    format!("[wave]\nc = {c}\nenergy = {e}\n")
}

fn run(args: &[&str], config: &Path) -> Output {
    bin().args(args).arg("--config").arg(config).output().unwrap()
}

#[test]
fn selftest_passes_and_detects_perturbation() {
    let ok = bin().arg("selftest").output().unwrap();
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stdout));
    let text = String::from_utf8(ok.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.ends_with("pass")).count(), 9);

    let bad = bin().args(["selftest", "--perturb", "abel-real"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let text = String::from_utf8(bad.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("abel-real") && l.ends_with("FAIL")));
}

#[test]
fn analyze_reports_hh_point_of_librational_wave() {
    let tmp = TempDir::new().unwrap();
    let cfg = config_file(tmp.path(), "w.toml", &sine_gordon_toml(1.4, 1.5));
    let out = run(&["analyze"], &cfg);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let hh = report["hh_points"].as_array().unwrap();
    assert_eq!(hh.len(), 1);
    let beta = hh[0]["beta"].as_f64().unwrap();
    assert!((beta - 0.9325633).abs() < 1e-6, "{beta}");
    assert_eq!(report["wave"]["regime"], "librational");
    assert!(report["config"]["scan"]["nu_min"].as_f64().unwrap() < 0.0);
}

#[test]
fn analyze_csv_writes_tables() {
    let tmp = TempDir::new().unwrap();
    let cfg = config_file(tmp.path(), "w.toml", &sine_gordon_toml(1.45, 6.0));
    let out_dir = tmp.path().join("out");
    let out = run(&["analyze", "--format", "csv", "--out", out_dir.to_str().unwrap()], &cfg);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let hh = std::fs::read_to_string(out_dir.join("hh_points.csv")).unwrap();
    assert_eq!(hh.lines().next(), Some("nu_star,beta,band_index,residual,min_delta"));
    assert_eq!(hh.lines().count(), 3);
    let bands = std::fs::read_to_string(out_dir.join("bands.csv")).unwrap();
    assert!(bands.lines().count() > 2);
    assert!(out_dir.join("report.json").exists());
}

#[test]
fn curve_has_one_row_per_sample() {
    let tmp = TempDir::new().unwrap();
    let text = format!("{}[curve]\nsamples = 50\n", sine_gordon_toml(1.4, 1.5));
    let cfg = config_file(tmp.path(), "w.toml", &text);
    let out = run(&["curve", "--format", "csv"], &cfg);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("beta,nu,F,kind"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 50);
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 4);
        let beta: f64 = cols[0].parse().unwrap();
        let nu: f64 = cols[1].parse().unwrap();
        assert!(beta > 0.0 && nu < 0.0);
    }
}

#[test]
fn spectrum_writes_axis_bands_and_curves() {
    let tmp = TempDir::new().unwrap();
    let text = format!(
        "{}[spectrum]\nre_min = -0.1\nre_max = 0.1\nim_min = 0.7\nim_max = 1.2\nnx = 64\nny = 64\n",
        sine_gordon_toml(1.4, 1.5)
    );
    let cfg = config_file(tmp.path(), "w.toml", &text);
    let out_dir = tmp.path().join("spectrum_out");
    let out = run(&["spectrum", "--out", out_dir.to_str().unwrap()], &cfg);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let bands = std::fs::read_to_string(out_dir.join("axis_bands.csv")).unwrap();
    assert_eq!(bands.lines().next(), Some("beta_lo,beta_hi"));
    let curves: Value = serde_json::from_str(&std::fs::read_to_string(out_dir.join("curves.json")).unwrap()).unwrap();
    assert!(!curves.as_array().unwrap().is_empty());
}

#[test]
fn spectrum_window_off_the_axis_has_no_axis_bands() {
    let mut cfg = RunConfig::sine_gordon(1.4, 1.5);
    cfg.spectrum.re_min = 0.5;
    cfg.spectrum.re_max = 1.0;
    cfg.spectrum.nx = 64;
    cfg.spectrum.ny = 64;
    let curves = commands::spectrum(&cfg, &Pool::new(Some(1)).unwrap()).unwrap();
    assert!(curves.axis_bands.is_empty());
    assert_eq!(output::axis_bands_csv(&curves), "beta_lo,beta_hi\n");
}

#[test]
fn spectrum_needs_an_output_directory() {
    let tmp = TempDir::new().unwrap();
    let cfg = config_file(tmp.path(), "w.toml", &sine_gordon_toml(1.4, 1.5));
    assert_eq!(run(&["spectrum"], &cfg).status.code(), Some(1));
}

#[test]
fn configuration_errors_exit_with_one() {
    let tmp = TempDir::new().unwrap();
    let cases = [
        // no orbit: energy at the separatrix
        sine_gordon_toml(1.45, 2.0),
        sine_gordon_toml(1.0, 1.0),
        format!("{}[wave.extra]\n", sine_gordon_toml(1.4, 1.5)),
        format!("{}[spectrum]\nnx = 8\n", sine_gordon_toml(1.4, 1.5)),
        "[potential]\nname = \"double-well\"\n[wave]\nc = 1.4\nenergy = 1.0\n".to_string(),
        "[wave]\nc = 1.4\n".to_string(),
    ];
    for (k, text) in cases.iter().enumerate() {
        let cfg = config_file(tmp.path(), &format!("c{k}.toml"), text);
        let out = run(&["analyze"], &cfg);
        assert_eq!(out.status.code(), Some(1), "case {k}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
    let missing = run(&["analyze"], &tmp.path().join("absent.toml"));
    assert_eq!(missing.status.code(), Some(1));
    let cfg = config_file(tmp.path(), "ok.toml", &sine_gordon_toml(1.4, 1.5));
    let out = bin().args(["--threads", "0", "analyze", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let cfg = RunConfig::sine_gordon(1.45, 6.0);
    let one = commands::analyze(&cfg, &Pool::new(Some(1)).unwrap()).unwrap();
    let four = commands::analyze(&cfg, &Pool::new(Some(4)).unwrap()).unwrap();
    assert_eq!(output::to_json(&one), output::to_json(&four));
    let a = commands::curve(&cfg, &Pool::new(Some(1)).unwrap()).unwrap();
    let b = commands::curve(&cfg, &Pool::new(Some(3)).unwrap()).unwrap();
    assert_eq!(output::curve_csv(&a), output::curve_csv(&b));
}

#[test]
fn resolved_config_reproduces_report() {
    let cfg = RunConfig::sine_gordon(0.5, -1.0);
    let pool = Pool::new(Some(2)).unwrap();
    let first = commands::analyze(&cfg, &pool).unwrap();
    let again = commands::analyze(&first.config, &pool).unwrap();
    assert_eq!(output::to_json(&first), output::to_json(&again));
}
