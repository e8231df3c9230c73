//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use kg_floquet::hamiltonian_hopf::{asymptotic_check, default_nu_min, nonresonant_probes, transversality};
use kg_floquet::hill::{self, Band};
use kg_floquet::*;
use kg_floquet_cli::parallel::Pool;
use kg_floquet_cli::{commands, RunConfig};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tempfile::TempDir;

const ROTATIONAL: (f64, f64) = (1.45, 6.0);
const LIBRATIONAL: (f64, f64) = (1.4, 1.5);

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sine_gordon(c: f64, e: f64) -> HillCoefficient {
    let w = WaveParameters::new(c, e).unwrap();
    hill_coefficient(&build_profile(Arc::new(SineGordon), w, 1024).unwrap())
}

fn bands_and_scan(coef: &HillCoefficient, c: f64) -> (BandStructure, Vec<HhPoint>) {
    let bands = band_structure(coef, default_nu_min(coef.period())).unwrap();
    let scan = hamiltonian_hopf::scan_hh_points_with(coef, c, &bands, ScanOptions::default(), &Sequential).unwrap();
    (bands, scan.points)
}

/// `Delta` for `P = p0` and its `nu`-derivatives, from the cosine and
/// hyperbolic cosine, or their common power series near `nu = p0`.
fn flat_oracle(p0: f64, t: f64, nu: f64) -> (f64, f64, f64) {
    let k2 = p0 - nu;
    let x = -k2 * t * t;
    if x.abs() < 0.5 {
        let (mut d, mut d1, mut d2) = (0.0, 0.0, 0.0);
        let mut fact = 1.0;
        for n in 0..25i32 {
            if n > 0 {
                fact *= ((2 * n - 1) * 2 * n) as f64;
            }
            let nf = n as f64;
            d += x.powi(n) / fact;
            d1 += nf * x.powi((n - 1).max(0)) / fact;
            d2 += nf * (nf - 1.0) * x.powi((n - 2).max(0)) / fact;
        }
        let t2 = t * t;
        (2.0 * d, 2.0 * t2 * d1, 2.0 * t2 * t2 * d2)
    } else if k2 > 0.0 {
        let k = k2.sqrt();
        let (s, c) = (k * t).sin_cos();
        (2.0 * c, t * s / k, (t * s / k - t * t * c) / (2.0 * k2))
    } else {
        let r = (-k2).sqrt();
        let (s, c) = ((r * t).sinh(), (r * t).cosh());
        (2.0 * c, t * s / r, (t * t * c - t * s / r) / (2.0 * -k2))
    }
}

fn constant_coefficient() -> Outcome {
    let start = Instant::now();
    let (mut e0, mut e1, mut e2) = (0.0f64, 0.0f64, 0.0f64);
    for p0 in [0.0, 1.0, -2.0] {
        for t in [PI, 2.5] {
            let coef = HillCoefficient::from_fn(t, move |_| p0).unwrap();
            for k in 0..200 {
                let nu = -50.0 + (p0 + 55.0) * k as f64 / 199.0;
                let (d, d1, d2) = flat_oracle(p0, t, nu);
                let r = hill::monodromy(&coef, nu).unwrap();
                e0 = e0.max((r.delta - d).abs());
                e1 = e1.max((r.delta_nu - d1).abs() / d1.abs().max(1.0));
                e2 = e2.max((r.delta_nunu - d2).abs() / d2.abs().max(1.0));
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(
        e0 <= 1e-8 && e1 <= 1e-7 && e2 <= 1e-7 && elapsed < Duration::from_secs(10),
        format!("|dDelta| {e0:.2e}, rel dDelta_nu {e1:.2e}, rel dDelta_nunu {e2:.2e}, {elapsed:.2?}"),
    )
}

fn abel_invariant() -> Outcome {
    let coef = sine_gordon(ROTATIONAL.0, ROTATIONAL.1);
    let nu_min = default_nu_min(coef.period());
    let mut rng = StdRng::seed_from_u64(2);
    let mut worst_real = 0.0f64;
    for _ in 0..200 {
        let nu = rng.random_range(nu_min..1.0);
        worst_real = worst_real.max((hill::monodromy(&coef, nu).unwrap().det() - 1.0).abs());
    }
    let mut worst_complex = 0.0f64;
    for _ in 0..50 {
        let nu = Complex64::new(rng.random_range(nu_min..1.0), rng.random_range(-5.0..5.0));
        worst_complex = worst_complex.max((hill::monodromy(&coef, nu).unwrap().det() - 1.0).norm());
    }
    ensure(
        worst_real <= 1e-9 && worst_complex <= 1e-9,
        format!("real {worst_real:.2e}, complex {worst_complex:.2e}"),
    )
}

fn periodic_point_at_zero() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (c, e) in [ROTATIONAL, LIBRATIONAL] {
        let (d, ..) = hill::discriminant(&sine_gordon(c, e), 0.0).unwrap();
        ok &= (d - 2.0).abs() <= 1e-6;
        parts.push(format!("c={c} E={e}: |Delta(0) - 2| = {:.2e}", (d - 2.0).abs()));
    }
    ensure(ok, parts.join(", "))
}

fn harmonic_limit() -> Outcome {
    let c: f64 = 1.45;
    let t = compute_period(&SineGordon, WaveParameters::new(c, 1e-3).unwrap()).unwrap();
    let rel = (t - 2.0 * PI * (c * c - 1.0).sqrt()).abs() / t;
    ensure(rel <= 1e-3, format!("relative deviation {rel:.2e}"))
}

fn zero_potential() -> Outcome {
    let coef = HillCoefficient::from_fn(PI, |_| 0.0).unwrap();
    let mut worst = 0.0f64;
    let mut hh = 0;
    for c in [1.45f64, 0.5] {
        for k in 0..100 {
            let nu = -0.05 - 0.49 * k as f64;
            let f = extended_f(&coef, c, nu).unwrap();
            worst = worst.max((f.value - c * c * nu).abs() / (c * c * nu).abs());
        }
        hh += scan_hh_points(&coef, c, -40.0, ScanOptions::default()).unwrap().points.len();
    }
    ensure(worst <= 1e-9 && hh == 0, format!("relative error {worst:.2e}, {hh} HH points"))
}

fn edges_excluded() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (c, e) in [ROTATIONAL, LIBRATIONAL] {
        let coef = sine_gordon(c, e);
        let (bands, hh) = bands_and_scan(&coef, c);
        let mut worst = 0.0f64;
        let mut closest = f64::INFINITY;
        let edges: Vec<f64> = bands.simple_edges().iter().map(|e| e.nu).filter(|&nu| nu < 0.0).collect();
        for &nu in &edges {
            let f = extended_f(&coef, c, nu).unwrap();
            worst = worst.max(f.value.abs());
            for p in &hh {
                closest = closest.min((p.nu_star - nu).abs());
            }
        }
        ok &= !edges.is_empty() && worst <= 1e-6 && closest > 1e-6;
        parts.push(format!("c={c}: {} edges, max|F| {worst:.2e}, nearest HH {closest:.2e}", edges.len()));
    }
    ensure(ok, parts.join(", "))
}

fn gap_and_deep_signs() -> Outcome {
    let (c, e) = ROTATIONAL;
    let coef = sine_gordon(c, e);
    let (bands, _) = bands_and_scan(&coef, c);
    let gaps: Vec<_> = bands.gaps.iter().filter(|g| g.hi < 0.0).collect();
    if gaps.is_empty() {
        return Err("no negative gap".into());
    }
    let mut min_gap_value = f64::INFINITY;
    for k in 0..20 {
        let g = gaps[k % gaps.len()];
        let per_gap = 20usize.div_ceil(gaps.len());
        let x = (1 + k / gaps.len()) as f64 / (per_gap + 1) as f64;
        let nu = g.lo + x * (g.hi - g.lo);
        min_gap_value = min_gap_value.min(extended_f(&coef, c, nu).unwrap().value - nu);
    }
    let c2m1 = c * c - 1.0;
    let targets: Vec<f64> = (1..=5).map(|k| -100.0 * k as f64 / (c2m1 * c2m1)).collect();
    let probes = asymptotic_check(&coef, c, &nonresonant_probes(coef.period(), &targets)).unwrap();
    let worst_ratio = probes
        .iter()
        .map(|p| p.ratio.map(|r| (r - 1.0).abs()).unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max);
    ensure(
        min_gap_value > 0.0 && worst_ratio <= 0.05,
        format!("min in-gap F - nu {min_gap_value:.3e}, max |ratio - 1| {worst_ratio:.3e}"),
    )
}

fn transversality_check() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let mut parts = Vec::new();
    let mut ok = true;
    for (c, e) in [ROTATIONAL, LIBRATIONAL] {
        let coef = sine_gordon(c, e);
        let (bands, hh) = bands_and_scan(&coef, c);
        let at_hh = hh.iter().map(|p| p.trans.min_delta()).fold(0.0, f64::max);
        let neg: Vec<&Band> = bands.bands.iter().filter(|b| b.lo < 0.0).collect();
        let mut off_hh = f64::INFINITY;
        let mut probes = 0;
        while probes < 20 {
            let b = neg[rng.random_range(0..neg.len())];
            let nu = rng.random_range(b.lo..b.hi.min(0.0));
            if hh.iter().any(|p| (p.nu_star - nu).abs() < 0.05 * (1.0 + p.nu_star.abs())) {
                continue;
            }
            off_hh = off_hh.min(transversality(&coef, c, nu).unwrap().min_delta());
            probes += 1;
        }
        ok &= !hh.is_empty() && at_hh <= 1e-6 && off_hh > 1e-3;
        parts.push(format!("c={c}: {} HH with max min|delta| {at_hh:.2e}, probes min {off_hh:.2e}", hh.len()));
    }
    ensure(ok, parts.join(", "))
}

/// Sign changes of `F - nu` written out from the discriminant, on a grid
/// ten times finer than the scan's.
fn dense_root_count(coef: &HillCoefficient, c: f64, nu_min: f64) -> usize {
    let t = coef.period();
    let c2t2 = c * c * t * t;
    let ds = PI / t / 160.0;
    let s_max = (-nu_min).sqrt();
    let n = (s_max / ds).ceil() as usize;
    let mut count = 0;
    let mut prev: Option<bool> = None;
    for k in 0..=n {
        let s = (0.5 + k as f64).min(s_max / ds) * ds;
        let nu = -s * s;
        let (d, d1, d2) = hill::discriminant(coef, nu).unwrap();
        let f = if d1.abs() > 1e-7 * (1.0 + nu.abs()) {
            c2t2 * (d * d - 4.0) / (4.0 * d1 * d1)
        } else if (d * d - 4.0).abs() > 1e-7 {
            (d * d - 4.0).signum() * f64::INFINITY
        } else {
            c2t2 * d / (4.0 * d2)
        };
        let pos = f - nu > 0.0;
        if prev.is_some_and(|p| p != pos) {
            count += 1;
        }
        prev = Some(pos);
    }
    count
}

fn config_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn spectral_crossings() -> Outcome {
    let pool = Pool::new(None).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    let mut ok = true;
    for name in ["rotational.toml", "librational.toml"] {
        let start = Instant::now();
        let cfg = RunConfig::load(&config_dir().join(name)).map_err(|e| e.to_string())?;
        let report = commands::analyze(&cfg, &pool).map_err(|e| e.to_string())?;
        let curves = commands::spectrum(&cfg, &pool).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let (_, hy) = curves.cell();
        let betas: Vec<f64> = report.hh_points.iter().map(|p| p.beta).collect();
        let crossings = curves.axis_crossings();
        let near = |a: f64, list: &[f64]| list.iter().any(|&b| (a - b).abs() <= hy);
        let matched = betas.iter().all(|&b| near(b, &crossings)) && crossings.iter().all(|&y| near(y, &betas));

        let coef = sine_gordon(cfg.wave.c, cfg.wave.energy);
        let dense = dense_root_count(&coef, cfg.wave.c, report.scan.nu_min);
        ok &= matched
            && !betas.is_empty()
            && dense == betas.len()
            && (cfg.spectrum.nx, cfg.spectrum.ny) == (512, 512)
            && elapsed < Duration::from_secs(300);
        parts.push(format!(
            "{name}: HH {betas:.4?} vs crossings {crossings:.4?} (cell {hy:.3e}), dense count {dense}, {elapsed:.1?}"
        ));
    }
    ensure(ok, parts.join("; "))
}

const CORPUS: [(&str, f64, f64); 17] = [
    ("sine-gordon", 1.4, 1.5),
    ("sine-gordon", 1.2, 0.5),
    ("sine-gordon", 2.0, 1.0),
    ("sine-gordon", 1.45, 1.9),
    ("sine-gordon", 1.45, 6.0),
    ("sine-gordon", 1.2, 3.0),
    ("sine-gordon", 2.0, 2.5),
    ("sine-gordon", 1.1, 4.0),
    ("sine-gordon", 0.5, 1.0),
    ("sine-gordon", 0.8, 0.3),
    ("sine-gordon", 0.3, 1.8),
    ("sine-gordon", 0.5, -1.0),
    ("sine-gordon", 0.8, -3.0),
    ("phi4", 1.5, 0.1),
    ("phi4", 0.5, -0.1),
    ("phi4", 0.5, -1.0),
    ("quartic", 1.5, 1.0),
];

fn corpus_toml(potential: &str, c: f64, e: f64) -> String {
    let head = match potential {
        "phi4" => "[potential]\nname = \"polynomial\"\ncoefficients = [0.0, 0.0, 0.5, 0.0, -0.25]\n",
        "quartic" => "[potential]\nname = \"polynomial\"\ncoefficients = [0.0, 0.0, 0.5, 0.0, 0.25]\n",
        _ => "",
    };
    format!("{head}[wave]\nc = {c}\nenergy = {e}\n")
}

fn corollary_consistency() -> Outcome {
    let tmp = TempDir::new().map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    let mut fired = 0;
    for (k, &(potential, c, e)) in CORPUS.iter().enumerate() {
        let path = tmp.path().join(format!("corpus{k}.toml"));
        std::fs::write(&path, corpus_toml(potential, c, e)).map_err(|e| e.to_string())?;
        let out = Command::new(env!("CARGO_BIN_EXE_kg-floquet"))
            .args(["analyze", "--config"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        if out.status.code() != Some(0) {
            failures.push(format!("{potential} c={c} E={e} exit {:?}", out.status.code()));
            continue;
        }
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        if report["corollaries"]["any_fired"].as_bool() == Some(true) {
            fired += 1;
        }
    }
    ensure(
        failures.is_empty(),
        format!("{} configurations, {fired} with a fired predicate, failures {failures:?}", CORPUS.len()),
    )
}

fn determinism() -> Outcome {
    let cfg = config_dir().join("rotational.toml");
    let mut parts = Vec::new();
    let mut ok = true;
    for (cmd, format) in [("analyze", "json"), ("curve", "csv"), ("curve", "json")] {
        let outputs: Vec<Vec<u8>> = (0..2)
            .map(|_| {
                Command::new(env!("CARGO_BIN_EXE_kg-floquet"))
                    .args([cmd, "--format", format, "--config"])
                    .arg(&cfg)
                    .output()
                    .map(|o| o.stdout)
                    .unwrap_or_default()
            })
            .collect();
        let same = !outputs[0].is_empty() && outputs[0] == outputs[1];
        ok &= same;
        parts.push(format!("{cmd} {format}: {} bytes, identical {same}", outputs[0].len()));
    }
    ensure(ok, parts.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("constant-coefficient oracle", constant_coefficient),
        ("Abel invariant", abel_invariant),
        ("periodic point at nu = 0", periodic_point_at_zero),
        ("harmonic-limit period", harmonic_limit),
        ("zero-potential F identity", zero_potential),
        ("band edges excluded", edges_excluded),
        ("signs in gaps and deep bands", gap_and_deep_signs),
        ("transversality", transversality_check),
        ("spectral crossings at HH points", spectral_crossings),
        ("corollary consistency", corollary_consistency),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let (verdict, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {verdict} {name}: {detail}", k + 1);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
