//! Brute-force propagation in a truncated Fock space.
//!
//! The Hamiltonian conserves photon number, so with a single photon shared
//! between the arms it splits into two mirror blocks (units `hbar = omega_m = 1`):
//!
//! * photon in arm B: `h0 = b^dag b`
//! * photon in arm A: `h1 = b^dag b - kappa (b + b^dag)`
//!
//! Each block is propagated exactly through its eigendecomposition, which
//! keeps the evolution unitary to machine precision. Nothing here uses the
//! closed-form coherent-state solution, so it serves as an independent check
//! on [`crate::closed_form`].

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::closed_form::OffDiagonal;
use crate::error::{Error, Result};

/// Upper bound on the population of the last [`TAIL_LEVELS`] Fock levels.
pub const TAIL_LIMIT: f64 = 1e-10;
pub const TAIL_LEVELS: usize = 4;

/// Two mirror blocks indexed by the photon occupation of arm A.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    /// `blocks[0]`: photon in arm B. `blocks[1]`: photon in arm A.
    pub blocks: [Vec<Complex64>; 2],
}

impl FockVector {
    /// `(|0>_A |1>_B + |1>_A |0>_B) / sqrt(2)` times the given mirror state.
    pub fn photon_superposition(mirror: &[Complex64]) -> Self {
        let w = std::f64::consts::FRAC_1_SQRT_2;
        let block: Vec<Complex64> = mirror.iter().map(|a| a * w).collect();
        Self { blocks: [block.clone(), block] }
    }

    pub fn n_max(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn block_population(&self, photon_in_a: usize) -> f64 {
        self.blocks[photon_in_a].iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.block_population(0) + self.block_population(1)
    }

    /// Population of the highest [`TAIL_LEVELS`] levels across both blocks.
    pub fn tail_mass(&self) -> f64 {
        self.blocks.iter().map(|b| tail_mass(b)).sum()
    }

    /// Photon coherence after tracing out the mirror.
    pub fn photon_offdiagonal(&self) -> OffDiagonal {
        reduced_photon_offdiagonal(&self.blocks[0], &self.blocks[1])
    }

    fn check_tail(&self) -> Result<()> {
        let tail = self.tail_mass();
        if tail < TAIL_LIMIT {
            Ok(())
        } else {
            Err(Error::Truncation { n_max: self.n_max(), tail_mass: tail, limit: TAIL_LIMIT })
        }
    }
}

fn tail_mass(block: &[Complex64]) -> f64 {
    let start = block.len().saturating_sub(TAIL_LEVELS);
    block[start..].iter().map(|a| a.norm_sqr()).sum()
}

/// Truncation rule for a coherent state of amplitude `|beta|`.
pub fn minimum_dimension(beta_abs: f64) -> usize {
    (beta_abs * beta_abs + 6.0 * beta_abs + 10.0).floor() as usize + 1
}

/// Truncation rule for propagation: the displaced branch can reach
/// amplitude `|beta| + 2 kappa`.
pub fn minimum_dimension_for_propagation(beta_abs: f64, kappa: f64) -> usize {
    minimum_dimension(beta_abs + 2.0 * kappa)
}

/// Fock amplitudes `e^{-|beta|^2/2} beta^n / sqrt(n!)`, renormalised to the
/// truncated space.
pub fn coherent_state_vector(beta: Complex64, n_max: usize) -> Result<Vec<Complex64>> {
    let required = minimum_dimension(beta.norm());
    if n_max < required {
        return Err(Error::TruncationRule { n_max, required });
    }
    let mut amps = Vec::with_capacity(n_max);
    let mut a = Complex64::new((-0.5 * beta.norm_sqr()).exp(), 0.0);
    amps.push(a);
    for n in 1..n_max {
        a = a * beta / (n as f64).sqrt();
        amps.push(a);
    }
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    let tail = tail_mass(&amps);
    if tail >= TAIL_LIMIT {
        return Err(Error::Truncation { n_max, tail_mass: tail, limit: TAIL_LIMIT });
    }
    Ok(amps)
}

/// The two Hamiltonian blocks in the truncated basis.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianBlocks {
    pub h0: DMatrix<f64>,
    pub h1: DMatrix<f64>,
}

impl HamiltonianBlocks {
    pub fn new(kappa: f64, n_max: usize) -> Self {
        let h0 = DMatrix::from_fn(n_max, n_max, |i, j| if i == j { i as f64 } else { 0.0 });
        let mut h1 = h0.clone();
        for n in 1..n_max {
            let off = -kappa * (n as f64).sqrt();
            h1[(n - 1, n)] = off;
            h1[(n, n - 1)] = off;
        }
        Self { h0, h1 }
    }

    /// `<psi|H|psi>` summed over both photon blocks.
    pub fn energy(&self, state: &FockVector) -> f64 {
        expectation(&self.h0, &state.blocks[0]) + expectation(&self.h1, &state.blocks[1])
    }
}

fn expectation(h: &DMatrix<f64>, psi: &[Complex64]) -> f64 {
    let n = psi.len();
    let mut acc = 0.0;
    for i in 0..n {
        let mut row = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let hij = h[(i, j)];
            if hij != 0.0 {
                row += psi[j] * hij;
            }
        }
        acc += (psi[i].conj() * row).re;
    }
    acc
}

/// Exact propagator for a fixed `kappa` and truncation. Diagonalises the
/// interacting block once; reuse it for many angles.
#[derive(Debug, Clone)]
pub struct Propagator {
    kappa: f64,
    blocks: HamiltonianBlocks,
    energies: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl Propagator {
    pub fn new(kappa: f64, n_max: usize) -> Self {
        let blocks = HamiltonianBlocks::new(kappa, n_max);
        let eig = SymmetricEigen::new(blocks.h1.clone());
        Self { kappa, blocks, energies: eig.eigenvalues, eigenvectors: eig.eigenvectors }
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn n_max(&self) -> usize {
        self.blocks.h0.nrows()
    }

    pub fn hamiltonian(&self) -> &HamiltonianBlocks {
        &self.blocks
    }

    /// Applies `exp(-i H theta)`. Fails if the result leaks into the
    /// truncation edge.
    pub fn propagate(&self, initial: &FockVector, theta: f64) -> Result<FockVector> {
        assert_eq!(initial.n_max(), self.n_max(), "dimension mismatch");
        let free: Vec<Complex64> = initial.blocks[0]
            .iter()
            .enumerate()
            .map(|(n, a)| a * Complex64::from_polar(1.0, -(n as f64) * theta))
            .collect();
        let driven = self.propagate_driven(&initial.blocks[1], theta);
        let out = FockVector { blocks: [free, driven] };
        out.check_tail()?;
        Ok(out)
    }

    fn propagate_driven(&self, psi: &[Complex64], theta: f64) -> Vec<Complex64> {
        let v = &self.eigenvectors;
        let n = psi.len();
        // Coefficients in the eigenbasis, rotated.
        let coeffs: Vec<Complex64> = (0..n)
            .map(|k| {
                let c: Complex64 = (0..n).map(|i| psi[i] * v[(i, k)]).sum();
                c * Complex64::from_polar(1.0, -self.energies[k] * theta)
            })
            .collect();
        (0..n)
            .map(|i| (0..n).map(|k| coeffs[k] * v[(i, k)]).sum())
            .collect()
    }
}

/// One-shot propagation; see [`Propagator`] for repeated use.
pub fn propagate(initial: &FockVector, kappa: f64, theta: f64) -> Result<FockVector> {
    Propagator::new(kappa, initial.n_max()).propagate(initial, theta)
}

/// Photon coherence `sum_n conj(B_n) A_n` from the two (weighted) mirror
/// blocks of a propagated state. For the equal-weight initial state this is
/// half the overlap of the normalised branch states.
pub fn reduced_photon_offdiagonal(
    photon_absent_branch: &[Complex64],
    photon_present_branch: &[Complex64],
) -> OffDiagonal {
    let value = photon_absent_branch
        .iter()
        .zip(photon_present_branch)
        .map(|(b, a)| b.conj() * a)
        .sum();
    OffDiagonal::new(value)
}

/// `<b>` of a mirror block, normalised by the block population.
pub fn mean_annihilation(block: &[Complex64]) -> Complex64 {
    let pop: f64 = block.iter().map(|a| a.norm_sqr()).sum();
    let s: Complex64 = (1..block.len())
        .map(|n| block[n - 1].conj() * block[n] * (n as f64).sqrt())
        .sum();
    s / pop
}

/// `<b^dag b>` of a mirror block, normalised by the block population.
pub fn mean_number(block: &[Complex64]) -> f64 {
    let pop: f64 = block.iter().map(|a| a.norm_sqr()).sum();
    block.iter().enumerate().map(|(n, a)| n as f64 * a.norm_sqr()).sum::<f64>() / pop
}

/// Result of one oracle evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSample {
    pub offdiagonal: OffDiagonal,
    /// `| |psi(theta)|^2 - |psi(0)|^2 |`.
    pub norm_drift: f64,
    /// `|<H>(theta) - <H>(0)|`, relative when `|<H>(0)| > 1`.
    pub energy_drift: f64,
    pub tail_mass: f64,
}

/// Prepares the equal superposition with the mirror in `|beta>` and
/// propagates it to `theta`.
pub fn oracle_sample(propagator: &Propagator, beta: Complex64, theta: f64) -> Result<OracleSample> {
    let mirror = coherent_state_vector(beta, propagator.n_max())?;
    let initial = FockVector::photon_superposition(&mirror);
    let evolved = propagator.propagate(&initial, theta)?;
    let h = propagator.hamiltonian();
    let e0 = h.energy(&initial);
    let e1 = h.energy(&evolved);
    Ok(OracleSample {
        offdiagonal: evolved.photon_offdiagonal(),
        norm_drift: (evolved.norm_sqr() - initial.norm_sqr()).abs(),
        energy_drift: (e1 - e0).abs() / e0.abs().max(1.0),
        tail_mass: evolved.tail_mass(),
    })
}

/// Worst-case disagreement between the oracle and the closed form.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Comparison {
    pub points: usize,
    pub max_deviation: f64,
    pub max_norm_drift: f64,
    pub max_energy_drift: f64,
    pub max_tail_mass: f64,
}

/// Evaluates every `(kappa, beta, theta)` point with the oracle and compares
/// it to [`crate::closed_form::off_diagonal_coherent`]. Points are
/// independent and evaluated in parallel.
pub fn compare_with_closed_form(points: &[(f64, Complex64, f64)], n_max: usize) -> Result<Comparison> {
    use rayon::prelude::*;

    let samples: Vec<(f64, OracleSample)> = points
        .par_iter()
        .map(|&(kappa, beta, theta)| {
            let prop = Propagator::new(kappa, n_max);
            let sample = oracle_sample(&prop, beta, theta)?;
            let cf = crate::closed_form::off_diagonal_coherent(kappa, beta, theta);
            Ok(((sample.offdiagonal.value - cf.value).norm(), sample))
        })
        .collect::<Result<_>>()?;
    Ok(samples.iter().fold(
        Comparison { points: samples.len(), ..Comparison::default() },
        |acc, (dev, s)| Comparison {
            points: acc.points,
            max_deviation: acc.max_deviation.max(*dev),
            max_norm_drift: acc.max_norm_drift.max(s.norm_drift),
            max_energy_drift: acc.max_energy_drift.max(s.energy_drift),
            max_tail_mass: acc.max_tail_mass.max(s.tail_mass),
        },
    ))
}

/// `n` random `(kappa, beta, theta)` points: `kappa` uniform in
/// `[0, kappa_max]`, `beta` uniform over the disc `|beta| <= beta_max`,
/// `theta` uniform in `[0, 2 pi]`. Point `i` uses stream `i` of `seed`.
pub fn random_points(n: usize, seed: u64, kappa_max: f64, beta_max: f64) -> Vec<(f64, Complex64, f64)> {
    use rand::Rng;
    use std::f64::consts::TAU;

    (0..n as u64)
        .map(|i| {
            let mut rng = crate::montecarlo::run_rng(seed, i);
            let kappa = kappa_max * rng.random::<f64>();
            let r = beta_max * rng.random::<f64>().sqrt();
            let phi = TAU * rng.random::<f64>();
            let theta = TAU * rng.random::<f64>();
            (kappa, Complex64::from_polar(r, phi), theta)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::{evolve_state, off_diagonal_coherent};
    use std::f64::consts::{PI, TAU};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Analytic coherent-state overlap, the oracle for the constructed vectors.
    fn coherent_overlap(b1: Complex64, b2: Complex64) -> Complex64 {
        (-(b1.norm_sqr() + b2.norm_sqr()) / 2.0 + b1.conj() * b2).exp()
    }

    fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    }

    #[test]
    fn vacuum() {
        let v = coherent_state_vector(c(0.0, 0.0), 12).unwrap();
        assert_eq!(v[0], c(1.0, 0.0));
        assert!(v[1..].iter().all(|a| *a == c(0.0, 0.0)));
    }

    #[test]
    fn coherent_mean_number() {
        let v = coherent_state_vector(c(1.0, 0.0), 30).unwrap();
        assert!((mean_number(&v) - 1.0).abs() < 1e-9);
        let v = coherent_state_vector(c(0.6, -1.3), 40).unwrap();
        assert!((mean_annihilation(&v) - c(0.6, -1.3)).norm() < 1e-9);
    }

    #[test]
    fn coherent_overlaps() {
        let betas = [c(0.0, 0.0), c(1.0, 0.0), c(-0.5, 1.2), c(1.4, 1.4), c(0.0, -2.0)];
        for &b1 in &betas {
            for &b2 in &betas {
                let v1 = coherent_state_vector(b1, 60).unwrap();
                let v2 = coherent_state_vector(b2, 60).unwrap();
                let got = inner(&v1, &v2);
                assert!((got - coherent_overlap(b1, b2)).norm() < 1e-9, "{b1} {b2}");
            }
        }
    }

    #[test]
    fn truncation_rule_enforced() {
        assert!(matches!(
            coherent_state_vector(c(3.0, 0.0), 20),
            Err(Error::TruncationRule { .. })
        ));
        assert!(coherent_state_vector(c(3.0, 0.0), 48).is_ok());
    }

    #[test]
    fn hamiltonian_blocks_shape() {
        let h = HamiltonianBlocks::new(0.7, 10);
        assert_eq!(h.h0, h.h0.transpose());
        assert_eq!(h.h1, h.h1.transpose());
        for i in 0..10 {
            assert_eq!(h.h0[(i, i)], i as f64);
        }
        assert!((h.h1[(2, 3)] + 0.7 * 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn free_evolution_is_pure_phase() {
        let mirror = coherent_state_vector(c(0.8, 0.3), 40).unwrap();
        let init = FockVector::photon_superposition(&mirror);
        let out = propagate(&init, 0.0, 1.3).unwrap();
        for blk in 0..2 {
            for n in 0..40 {
                let expected = init.blocks[blk][n] * Complex64::from_polar(1.0, -(n as f64) * 1.3);
                assert!((out.blocks[blk][n] - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn displaced_branch_follows_closed_form() {
        let (kappa, beta, theta) = (0.5, c(0.3, 0.0), PI);
        let mirror = coherent_state_vector(beta, 60).unwrap();
        let out = propagate(&FockVector::photon_superposition(&mirror), kappa, theta).unwrap();
        let expected = evolve_state(kappa, beta, theta);
        let b = mean_annihilation(&out.blocks[1]);
        assert!((b - expected.beta_a).norm() < 1e-6);
        // Position in units of x_zp: <b + b^dag> = 2 Re <b>.
        assert!((2.0 * b.re - 2.0 * expected.beta_a.re).abs() < 1e-6);
        assert!((mean_annihilation(&out.blocks[0]) - expected.beta_b).norm() < 1e-9);
    }

    #[test]
    fn oracle_matches_coherent_offdiagonal() {
        let cases = [
            (1.0, c(0.0, 0.0), PI),
            (0.7, c(1.0, 0.5), 2.1),
            (1.0, c(0.0, 2.0), PI / 2.0),
            (1.3, c(-1.2, 0.9), 5.5),
        ];
        for (kappa, beta, theta) in cases {
            let prop = Propagator::new(kappa, 96);
            let s = oracle_sample(&prop, beta, theta).unwrap();
            let cf = off_diagonal_coherent(kappa, beta, theta);
            assert!((s.offdiagonal.value - cf.value).norm() < 1e-6, "{kappa} {beta} {theta}");
            assert!(s.norm_drift < 1e-9);
            assert!(s.energy_drift < 1e-9);
        }
        let s = oracle_sample(&Propagator::new(1.0, 96), c(0.0, 0.0), PI).unwrap();
        let expected = c(-0.5 * (-2.0f64).exp(), 0.0);
        assert!((s.offdiagonal.value - expected).norm() < 1e-6);
    }

    #[test]
    fn offdiagonal_at_zero_is_half() {
        let mirror = coherent_state_vector(c(1.0, -1.0), 50).unwrap();
        let v = FockVector::photon_superposition(&mirror);
        assert!((v.photon_offdiagonal().value - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn populations_conserved_and_reversible() {
        let prop = Propagator::new(1.2, 96);
        let mirror = coherent_state_vector(c(1.0, 1.0), 96).unwrap();
        let init = FockVector::photon_superposition(&mirror);
        let fwd = prop.propagate(&init, 2.7).unwrap();
        assert!((fwd.block_population(0) - 0.5).abs() < 1e-12);
        assert!((fwd.block_population(1) - 0.5).abs() < 1e-12);
        let back = prop.propagate(&fwd, -2.7).unwrap();
        for blk in 0..2 {
            for (a, b) in back.blocks[blk].iter().zip(&init.blocks[blk]) {
                assert!((a - b).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn number_returns_after_full_period() {
        let beta = c(0.9, -0.4);
        let prop = Propagator::new(1.0, 96);
        let mirror = coherent_state_vector(beta, 96).unwrap();
        let out = prop.propagate(&FockVector::photon_superposition(&mirror), TAU).unwrap();
        assert!((mean_number(&out.blocks[1]) - beta.norm_sqr()).abs() < 1e-8);
    }

    #[test]
    fn truncation_error_after_propagation() {
        // Fits initially but the displaced branch runs into the edge.
        let mirror = coherent_state_vector(c(0.0, 0.0), 12).unwrap();
        let init = FockVector::photon_superposition(&mirror);
        let err = propagate(&init, 2.0, PI).unwrap_err();
        match err {
            Error::Truncation { tail_mass, .. } => assert!(tail_mass > TAIL_LIMIT),
            other => panic!("unexpected {other:?}"),
        }
    }
}
