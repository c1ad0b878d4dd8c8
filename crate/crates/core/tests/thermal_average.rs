//! The thermal coherence as an average of coherent-state coherences.

use std::f64::consts::{PI, TAU};

use optomirror::closed_form::{off_diagonal_coherent, off_diagonal_thermal};
use optomirror::montecarlo::{run_rng, thermal_average_check};
use optomirror::Complex64;
use proptest::prelude::*;

/// Trapezoidal 2-D quadrature of the coherent coherence against the thermal
/// Gaussian weight over +/- 10 standard deviations.
fn quadrature_average(kappa: f64, nbar: f64, theta: f64, points: usize) -> Complex64 {
    let sigma = (nbar / 2.0).sqrt();
    let half = 10.0 * sigma;
    let h = 2.0 * half / (points - 1) as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..points {
        let x = -half + h * i as f64;
        for j in 0..points {
            let y = -half + h * j as f64;
            let w = (-(x * x + y * y) / nbar).exp() / (PI * nbar);
            acc += off_diagonal_coherent(kappa, Complex64::new(x, y), theta).value * w;
        }
    }
    acc * h * h
}

#[test]
fn quadrature_matches_thermal_formula() {
    for &nbar in &[0.5, 3.0, 10.0] {
        for &kappa in &[0.3, 1.0] {
            for &theta in &[0.3, 1.7, PI, 5.9] {
                let q = quadrature_average(kappa, nbar, theta, 401);
                let exact = off_diagonal_thermal(kappa, nbar, theta).value;
                // Relative 1e-6, with an absolute floor where the coherence
                // itself is below double-precision noise of the quadrature.
                let err = (q - exact).norm();
                assert!(
                    err < 1e-6 * exact.norm() + 1e-14,
                    "nbar {nbar} kappa {kappa} theta {theta}: err {err:e} vs {:e}",
                    exact.norm()
                );
            }
        }
    }
}

#[test]
fn monte_carlo_matches_thermal_formula() {
    let mut case = 0;
    for &nbar in &[10.0, 100.0, 2500.0] {
        for &theta in &[0.3, PI, 5.9] {
            let mut rng = run_rng(31, case);
            case += 1;
            let avg = thermal_average_check(1.0, nbar, theta, 10_000, &mut rng);
            let exact = off_diagonal_thermal(1.0, nbar, theta).value;
            let dev = (avg.mean - exact).norm();
            assert!(dev <= 3.0 * avg.stderr, "nbar {nbar} theta {theta}: {dev:e} > 3 x {:e}", avg.stderr);
        }
    }
}

fn phase_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

proptest! {
    #[test]
    fn modulus_independent_of_beta(
        kappa in 0.0f64..2.0, theta in 0.0f64..TAU,
        re in -5.0f64..5.0, im in -5.0f64..5.0,
    ) {
        let a = off_diagonal_coherent(kappa, Complex64::new(re, im), theta).value.norm();
        let b = off_diagonal_coherent(kappa, Complex64::new(0.0, 0.0), theta).value.norm();
        prop_assert!((a - b).abs() < 1e-15);
        prop_assert!(a <= 0.5);
    }

    #[test]
    fn full_period_phase_is_kerr_only(kappa in 0.0f64..2.0, re in -5.0f64..5.0, im in -5.0f64..5.0) {
        let od = off_diagonal_coherent(kappa, Complex64::new(re, im), TAU);
        prop_assert!(phase_diff(od.phase(), TAU * kappa * kappa) < 1e-12);
        prop_assert!((od.visibility() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn modulus_is_periodic(kappa in 0.0f64..2.0, nbar in 0.0f64..1e4, theta in 0.0f64..TAU, k in 1i32..4) {
        let shifted = theta + TAU * k as f64;
        let a = off_diagonal_thermal(kappa, nbar, theta);
        let b = off_diagonal_thermal(kappa, nbar, shifted);
        prop_assert!((a.value.norm() - b.value.norm()).abs() < 1e-9);
        // Phase shifts by the linear Kerr term only.
        let kerr_shift = kappa * kappa * TAU * k as f64;
        prop_assert!(phase_diff(b.phase(), a.phase() + kerr_shift) < 1e-8 || a.value.norm() < 1e-300);
    }
}
