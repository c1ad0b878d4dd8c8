//! Fock-space propagation against the closed-form coherence.

use std::f64::consts::TAU;

use optomirror::closed_form::off_diagonal_coherent;
use optomirror::fock::{coherent_state_vector, oracle_sample, FockVector, Propagator};
use optomirror::montecarlo::run_rng;
use optomirror::Complex64;
use rand::Rng;

const N_MAX: usize = 96;

fn random_point(rng: &mut impl Rng) -> (f64, Complex64, f64) {
    let kappa = rng.random_range(0.0..=1.5);
    let r = 2.0 * rng.random::<f64>().sqrt();
    let phi = rng.random_range(0.0..TAU);
    let theta = rng.random_range(0.0..=TAU);
    (kappa, Complex64::from_polar(r, phi), theta)
}

#[test]
fn randomized_oracle_agreement() {
    let mut rng = run_rng(2024, 0);
    let mut worst = 0.0f64;
    for _ in 0..240 {
        let (kappa, beta, theta) = random_point(&mut rng);
        let prop = Propagator::new(kappa, N_MAX);
        let s = oracle_sample(&prop, beta, theta).unwrap();
        let cf = off_diagonal_coherent(kappa, beta, theta);
        worst = worst.max((s.offdiagonal.value - cf.value).norm());
        assert!(s.norm_drift <= 1e-9);
        assert!(s.energy_drift <= 1e-9);
    }
    assert!(worst <= 1e-6, "max deviation {worst:e}");
}

#[test]
fn free_evolution_points_are_exact() {
    let mut rng = run_rng(99, 0);
    let prop = Propagator::new(0.0, N_MAX);
    for _ in 0..50 {
        let (_, beta, theta) = random_point(&mut rng);
        let s = oracle_sample(&prop, beta, theta).unwrap();
        assert!((s.offdiagonal.value - Complex64::new(0.5, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn energy_conserved_over_a_period() {
    let prop = Propagator::new(1.2, N_MAX);
    let mirror = coherent_state_vector(Complex64::new(1.5, -0.7), N_MAX).unwrap();
    let init = FockVector::photon_superposition(&mirror);
    let e0 = prop.hamiltonian().energy(&init);
    for k in 0..=32 {
        let out = prop.propagate(&init, TAU * k as f64 / 32.0).unwrap();
        let e = prop.hamiltonian().energy(&out);
        assert!(((e - e0) / e0).abs() < 1e-9);
        assert!((out.norm_sqr() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn time_reversal_restores_state() {
    let mut rng = run_rng(5, 1);
    for _ in 0..10 {
        let (kappa, beta, theta) = random_point(&mut rng);
        let prop = Propagator::new(kappa, N_MAX);
        let init = FockVector::photon_superposition(&coherent_state_vector(beta, N_MAX).unwrap());
        let back = prop.propagate(&prop.propagate(&init, theta).unwrap(), -theta).unwrap();
        for blk in 0..2 {
            for (a, b) in back.blocks[blk].iter().zip(&init.blocks[blk]) {
                assert!((a - b).norm() < 1e-9);
            }
        }
    }
}
