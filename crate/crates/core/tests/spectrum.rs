use std::sync::Arc;

use kg_floquet::hamiltonian_hopf::default_nu_min;
use kg_floquet::spectrum::{
    axis_bands, axis_bands_sampled, default_probe_radius, evaluate_evans, indicator, off_axis_probe, ProbeOutcome,
};
use kg_floquet::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn sine_gordon(c: f64, e: f64) -> HillCoefficient {
    let w = WaveParameters::new(c, e).unwrap();
    hill_coefficient(&build_profile(Arc::new(SineGordon), w, 1024).unwrap())
}

fn hh_betas(coef: &HillCoefficient, c: f64) -> Vec<f64> {
    let scan = scan_hh_points(coef, c, default_nu_min(coef.period()), ScanOptions::default()).unwrap();
    scan.points.iter().map(|p| p.beta).collect()
}

#[test]
fn coarse_trace_crosses_axis_at_hh_point() {
    let c = 1.4;
    let coef = sine_gordon(c, 1.5);
    let betas = hh_betas(&coef, c);
    assert_eq!(betas.len(), 1);
    let window = Window::new(-0.1, 0.1, 0.7, 1.2).unwrap();
    let curves = trace_spectrum(&coef, c, window, (64, 64)).unwrap();
    let crossings = curves.axis_crossings();
    let (_, hy) = curves.cell();
    assert!(!crossings.is_empty());
    assert!(
        crossings.iter().any(|y| (y - betas[0]).abs() <= hy),
        "{crossings:?} vs {betas:?}"
    );
    assert_eq!(curves.skipped_cells, 0);
}

#[test]
fn traced_curves_are_mirror_symmetric() {
    let c = 1.4;
    let coef = sine_gordon(c, 1.5);
    let window = Window::new(-0.5, 0.5, 0.0, 3.0).unwrap();
    let curves = trace_spectrum(&coef, c, window, (64, 64)).unwrap();
    let vertices: Vec<(f64, f64)> = curves.segments.iter().flatten().copied().collect();
    assert!(!vertices.is_empty());
    for &(x, y) in &vertices {
        let mirrored = vertices
            .iter()
            .any(|&(u, v)| (u + x).abs() <= 1e-9 && (v - y).abs() <= 1e-9);
        assert!(mirrored, "no mirror image of ({x}, {y})");
    }
}

#[test]
fn vertices_lie_where_the_indicator_is_small() {
    let c = 1.45;
    let coef = sine_gordon(c, 6.0);
    let window = Window::new(-0.5, 0.5, 0.0, 4.0).unwrap();
    let grid = (64, 64);
    let curves = trace_spectrum(&coef, c, window, grid).unwrap();
    let (xs, ys) = window.axes(grid.0, grid.1);
    let (hx, hy) = curves.cell();
    let g = |x: f64, y: f64| indicator(&coef, c, Complex64::new(x, y)).unwrap();
    for &(x, y) in curves.segments.iter().flatten() {
        let i = (((x - xs[0]) / hx).floor() as usize).min(grid.0 - 2);
        let j = (((y - ys[0]) / hy).floor() as usize).min(grid.1 - 2);
        let corners = [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)];
        let bound = corners.iter().map(|&(a, b)| g(xs[a], ys[b]).abs()).fold(0.0, f64::max);
        assert!(g(x, y).abs() <= bound, "({x}, {y})");
    }
}

#[test]
fn axis_bands_agree_with_sampled_discriminant() {
    for (c, e) in [(1.45, 6.0), (1.4, 1.5), (0.5, 1.0)] {
        let coef = sine_gordon(c, e);
        let window = Window::new(-1.0, 1.0, 0.0, 6.0).unwrap();
        let n = 3000;
        let h = 6.0 / n as f64;
        // intervals narrower than a sample, such as the point band at the
        // origin, are below the sampled resolution
        let exact: Vec<(f64, f64)> = axis_bands(&coef, c, &window)
            .unwrap()
            .into_iter()
            .filter(|(lo, hi)| hi - lo > h)
            .collect();
        let sampled = axis_bands_sampled(&coef, c, &window, n).unwrap();
        assert_eq!(exact.len(), sampled.len(), "c={c} E={e}: {exact:?} vs {sampled:?}");
        for (a, b) in exact.iter().zip(&sampled) {
            assert!((a.0 - b.0).abs() <= h && (a.1 - b.1).abs() <= h, "{a:?} vs {b:?}");
        }
    }
}

#[test]
fn off_axis_probe_separates_hh_points_from_bands() {
    for (c, e) in [(1.45, 6.0), (1.4, 1.5)] {
        let coef = sine_gordon(c, e);
        for beta in hh_betas(&coef, c) {
            let probe = off_axis_probe(&coef, c, beta, default_probe_radius(beta)).unwrap();
            assert_eq!(probe.outcome, ProbeOutcome::Unstable, "c={c} E={e} beta={beta}");
        }
    }
    let c = 1.45;
    let coef = sine_gordon(c, 6.0);
    let bands = band_structure(&coef, -20.0).unwrap();
    let c2m1: f64 = c * c - 1.0;
    let betas = hh_betas(&coef, c);
    let band = bands.bands.iter().find(|b| b.hi < 0.0 && b.lo > -15.0).unwrap();
    for nu in [band.lo, 0.5 * (band.lo + band.hi)] {
        let beta = c2m1 * (-nu).sqrt();
        if betas.iter().any(|b| (b - beta).abs() < 0.1) {
            continue;
        }
        let probe = off_axis_probe(&coef, c, beta, 1e-3).unwrap();
        assert_ne!(probe.outcome, ProbeOutcome::Unstable, "beta={beta}");
    }
}

#[test]
fn origin_is_a_periodic_eigenvalue() {
    for (c, e) in [(1.45, 6.0), (1.4, 1.5), (0.5, -1.0)] {
        let coef = sine_gordon(c, e);
        let d = evaluate_evans(&coef, c, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)).unwrap();
        assert!(d.norm() <= 1e-6, "c={c} E={e}: {d}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplier_identities(re in -1.0f64..1.0, im in -5.0f64..5.0) {
        let c = 1.45;
        let coef = sine_gordon(c, 6.0);
        let m = multipliers(&coef, c, Complex64::new(re, im)).unwrap();
        let scale = m.shift.norm_sqr().max(1.0) * m.delta.norm().max(1.0);
        prop_assert!((m.mu1 * m.mu2 - m.shift * m.shift).norm() <= 1e-10 * scale);
        prop_assert!((m.mu1 + m.mu2 - m.shift * m.delta).norm() <= 1e-10 * scale);
        let product = m.mu1.norm().ln() * m.mu2.norm().ln();
        prop_assert!((m.indicator - product).abs() <= 1e-9 * (1.0 + product.abs()));
        for mu in [m.mu1, m.mu2] {
            let d = evaluate_evans(&coef, c, m.lambda, mu).unwrap();
            prop_assert!(d.norm() <= 1e-9 * scale);
        }
    }

    #[test]
    fn indicator_is_symmetric(re in -1.0f64..1.0, im in -5.0f64..5.0) {
        let c = 1.4;
        let coef = sine_gordon(c, 1.5);
        let g = indicator(&coef, c, Complex64::new(re, im)).unwrap();
        for (x, y) in [(-re, im), (re, -im), (-re, -im)] {
            let h = indicator(&coef, c, Complex64::new(x, y)).unwrap();
            prop_assert!((g - h).abs() <= 1e-9 * (1.0 + g.abs()));
        }
    }
}
