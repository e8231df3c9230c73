use kg_floquet::contour::zero_contours;
use kg_floquet::*;
use proptest::prelude::*;

/// `int_b^a V'(u) du` by composite Simpson, which has no cancellation when
/// `a` and `b` are close.
fn integrated_difference(p: &dyn Potential, a: f64, b: f64) -> f64 {
    let n = 2048;
    let h = (a - b) / n as f64;
    let mut sum = p.values(b).dv + p.values(a).dv;
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * p.values(b + k as f64 * h).dv;
    }
    sum * h / 3.0
}

fn circle_field(cx: f64, cy: f64, r: f64, n: usize) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let xs: Vec<f64> = (0..n).map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64).collect();
    let ys = xs.clone();
    let mut values = Vec::with_capacity(n * n);
    for &y in &ys {
        for &x in &xs {
            values.push((x - cx).hypot(y - cy) - r);
        }
    }
    (xs, ys, values)
}

proptest! {
    #[test]
    fn sine_gordon_difference_is_accurate(b in -10.0f64..10.0, d in -1.0f64..1.0, scale in 0u32..12) {
        let a = b + d * 10f64.powi(-(scale as i32));
        let got = SineGordon.difference(a, b);
        let want = integrated_difference(&SineGordon, a, b);
        prop_assert!((got - want).abs() <= 1e-12 * want.abs().max(1e-300) + 1e-300, "{} vs {}", got, want);
    }

    #[test]
    fn polynomial_difference_is_accurate(
        coeffs in prop::collection::vec(-2.0f64..2.0, 2..6),
        b in -3.0f64..3.0,
        d in -1.0f64..1.0,
        scale in 0u32..12,
    ) {
        let p = Polynomial::new(coeffs).unwrap();
        let a = b + d * 10f64.powi(-(scale as i32));
        let got = p.difference(a, b);
        let want = integrated_difference(&p, a, b);
        let size = p.coefficients().iter().map(|c| c.abs()).sum::<f64>() * 27.0;
        prop_assert!((got - want).abs() <= 1e-13 * size * (a - b).abs(), "{} vs {}", got, want);
    }

    #[test]
    fn lambda_nu_round_trip(nu in -1e4f64..-1e-8, c in prop_oneof![0.05f64..0.99, 1.01f64..5.0]) {
        let lambda = hamiltonian_hopf::lambda_of_nu(nu, c).unwrap();
        prop_assert!(lambda.re == 0.0 && lambda.im > 0.0);
        let back = hamiltonian_hopf::nu_of_lambda(lambda, c).unwrap();
        prop_assert!((back.re - nu).abs() <= 1e-14 * nu.abs());
        prop_assert!(back.im.abs() <= 1e-14 * nu.abs());
    }

    #[test]
    fn circle_contour_is_one_closed_loop(cx in -0.3f64..0.3, cy in -0.3f64..0.3, r in 0.2f64..0.6) {
        let n = 81;
        let (xs, ys, values) = circle_field(cx, cy, r, n);
        let contours = zero_contours(&xs, &ys, &values);
        prop_assert_eq!(contours.polylines.len(), 1);
        prop_assert_eq!(contours.skipped_cells, 0);
        let line = &contours.polylines[0];
        prop_assert_eq!(line.first(), line.last());
        let h = 2.0 / (n - 1) as f64;
        for &(x, y) in line {
            prop_assert!(((x - cx).hypot(y - cy) - r).abs() <= h * h);
        }
    }
}

#[test]
fn contour_skips_cells_with_missing_values() {
    let (xs, ys, mut values) = circle_field(0.0, 0.0, 0.5, 41);
    values[20 * 41 + 30] = f64::NAN;
    let contours = zero_contours(&xs, &ys, &values);
    assert_eq!(contours.skipped_cells, 4);
    assert!(!contours.polylines.is_empty());
}
