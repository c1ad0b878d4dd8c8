//! Exact photon–mirror dynamics.
//!
//! With the photon in arm B the mirror oscillates freely; with the photon in
//! arm A (the cavity with the movable mirror) the mirror is pushed towards a
//! new equilibrium displaced by `kappa`. Starting from a mirror coherent state
//! `|beta>`, both branches stay coherent:
//!
//! ```text
//! branch B: |beta e^{-i theta}>
//! branch A: e^{i (kerr + disp)} |beta e^{-i theta} + kappa (1 - e^{-i theta})>
//! kerr = kappa^2 (theta - sin theta),  disp = kappa Im[beta (1 - e^{-i theta})]
//! ```
//!
//! The photon coherence is half the overlap of the two mirror branches. Its
//! modulus `1/2 exp(-kappa^2 (1 - cos theta))` does not depend on `beta`; its
//! phase does, except at full periods where the mirror has disentangled.
//! Averaging over a thermal distribution of `beta` washes the phase out and
//! gives a Gaussian decay in `theta` with a sharp revival at `2 pi`.
//!
//! All angles are the mechanical phase `theta = omega_m t`. The optical phase
//! `omega_c t` is common to both arms and dropped.

use std::f64::consts::TAU;

use num_complex::Complex64;

/// Coherent amplitudes and phases of the two branches of the entangled state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchState {
    /// Mirror amplitude with the photon in arm B.
    pub beta_b: Complex64,
    /// Mirror amplitude with the photon in arm A.
    pub beta_a: Complex64,
    /// `kappa^2 (theta - sin theta)`.
    pub kerr_phase: f64,
    /// `kappa Im[beta (1 - e^{-i theta})]`, the state-dependent phase picked
    /// up by the displaced branch. Vanishes at every full period.
    pub displacement_phase: f64,
}

impl BranchState {
    /// Total phase of branch A relative to branch B (excluding overlap).
    pub fn branch_phase(&self) -> f64 {
        self.kerr_phase + self.displacement_phase
    }
}

/// An off-diagonal element of the photon's reduced density matrix, in the
/// `{|1>_A |0>_B, |0>_A |1>_B}` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OffDiagonal {
    pub value: Complex64,
}

impl OffDiagonal {
    pub fn new(value: Complex64) -> Self {
        Self { value }
    }

    /// Interference visibility, twice the modulus.
    pub fn visibility(&self) -> f64 {
        2.0 * self.value.norm()
    }

    pub fn phase(&self) -> f64 {
        self.value.arg()
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VisibilityCurve {
    pub thetas: Vec<f64>,
    pub visibility: Vec<f64>,
    pub phase: Vec<f64>,
}

impl VisibilityCurve {
    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }
}

/// `1 - cos(theta)`, evaluated as `2 sin^2(theta / 2)` so that it is exactly
/// zero at multiples of `2 pi` up to the rounding of `theta` itself.
#[inline]
pub fn one_minus_cos(theta: f64) -> f64 {
    let s = (0.5 * theta).sin();
    2.0 * s * s
}

#[inline]
fn kerr_phase(kappa: f64, theta: f64) -> f64 {
    kappa * kappa * (theta - theta.sin())
}

/// `1 - e^{-i theta}`.
#[inline]
fn displacement_kernel(theta: f64) -> Complex64 {
    Complex64::new(one_minus_cos(theta), theta.sin())
}

pub fn evolve_state(kappa: f64, beta: Complex64, theta: f64) -> BranchState {
    let rot = Complex64::from_polar(1.0, -theta);
    let kernel = displacement_kernel(theta);
    let beta_b = beta * rot;
    BranchState {
        beta_b,
        beta_a: beta_b + kappa * kernel,
        kerr_phase: kerr_phase(kappa, theta),
        displacement_phase: kappa * (beta * kernel).im,
    }
}

/// Photon coherence for a mirror initially in the coherent state `|beta>`.
///
/// `1/2 exp(-kappa^2 (1 - cos theta)) exp(i [kappa^2 (theta - sin theta)
/// + 2 kappa Im(beta (1 - e^{-i theta}))])`. Half of the `beta` phase comes
/// from the branch phase, half from the overlap of the displaced states.
pub fn off_diagonal_coherent(kappa: f64, beta: Complex64, theta: f64) -> OffDiagonal {
    let modulus = 0.5 * (-kappa * kappa * one_minus_cos(theta)).exp();
    let phase = kerr_phase(kappa, theta) + 2.0 * kappa * (beta * displacement_kernel(theta)).im;
    OffDiagonal::new(Complex64::from_polar(modulus, phase))
}

/// Photon coherence averaged over a thermal mirror state with occupation
/// `nbar`.
pub fn off_diagonal_thermal(kappa: f64, nbar: f64, theta: f64) -> OffDiagonal {
    let modulus = 0.5 * (-kappa * kappa * (2.0 * nbar + 1.0) * one_minus_cos(theta)).exp();
    OffDiagonal::new(Complex64::from_polar(modulus, kerr_phase(kappa, theta)))
}

/// Samples the thermal visibility at `thetas`.
///
/// `attenuation`, if given, multiplies the visibility at each angle (e.g.
/// [`crate::decoherence::DecoherenceModel::attenuation_factor`]). The phase is
/// left untouched.
pub fn visibility_curve(
    kappa: f64,
    nbar: f64,
    thetas: &[f64],
    attenuation: Option<&dyn Fn(f64) -> f64>,
) -> VisibilityCurve {
    let mut curve = VisibilityCurve {
        thetas: thetas.to_vec(),
        visibility: Vec::with_capacity(thetas.len()),
        phase: Vec::with_capacity(thetas.len()),
    };
    for &theta in thetas {
        let od = off_diagonal_thermal(kappa, nbar, theta);
        let factor = attenuation.map_or(1.0, |f| f(theta));
        curve.visibility.push(od.visibility() * factor);
        curve.phase.push(od.phase());
    }
    curve
}

/// Full width of the revival peak in seconds, `2 / (kappa omega_m sqrt(nbar))`.
///
/// The peak cannot be wider than a mechanical period; in the ground-state
/// regime (`nbar -> 0`) or without coupling the period is returned.
pub fn revival_width(kappa: f64, omega_m: f64, nbar: f64) -> f64 {
    let period = TAU / omega_m;
    if kappa <= 0.0 || nbar <= 0.0 {
        return period;
    }
    (2.0 / (kappa * omega_m * nbar.sqrt())).min(period)
}

/// Gaussian width (in `theta`) of the thermal visibility around a revival,
/// `1 / (kappa sqrt(2 nbar + 1))`.
pub fn revival_sigma(kappa: f64, nbar: f64) -> f64 {
    if kappa <= 0.0 {
        return f64::INFINITY;
    }
    1.0 / (kappa * (2.0 * nbar + 1.0).sqrt())
}

/// Sampling grid over `[theta_min, theta_max]`: `samples` uniform points plus
/// a dense patch of `+/- 6 sigma` around every multiple of `2 pi` in range,
/// where `sigma` is the Gaussian width of the revival peak.
pub fn adaptive_theta_grid(
    theta_min: f64,
    theta_max: f64,
    samples: usize,
    kappa: f64,
    nbar: f64,
) -> Vec<f64> {
    const PATCH_POINTS: usize = 401;
    const PATCH_SIGMAS: f64 = 6.0;

    let samples = samples.max(2);
    let span = theta_max - theta_min;
    let step = span / (samples - 1) as f64;
    let mut grid: Vec<f64> = (0..samples)
        .map(|i| if i + 1 == samples { theta_max } else { theta_min + step * i as f64 })
        .collect();

    let sigma = revival_sigma(kappa, nbar);
    if sigma.is_finite() && PATCH_SIGMAS * sigma < span {
        let half = PATCH_SIGMAS * sigma;
        let first = (theta_min / TAU).ceil() as i64;
        let last = (theta_max / TAU).floor() as i64;
        for k in first..=last {
            let centre = TAU * k as f64;
            for j in 0..PATCH_POINTS {
                let t = centre - half + 2.0 * half * j as f64 / (PATCH_POINTS - 1) as f64;
                if t > theta_min && t < theta_max {
                    grid.push(t);
                }
            }
            if centre >= theta_min && centre <= theta_max {
                grid.push(centre);
            }
        }
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// Full width at half maximum of the peak of `values` nearest to `centre`,
/// by linear interpolation between samples.
///
/// A peak that sits on the edge of the sampled range (a revival at exactly
/// `2 pi` on a `[0, 2 pi]` grid) is treated as symmetric: the available side
/// is mirrored. Returns `None` if neither side crosses half maximum.
pub fn peak_fwhm(thetas: &[f64], values: &[f64], centre: f64) -> Option<f64> {
    if thetas.is_empty() || thetas.len() != values.len() {
        return None;
    }
    let peak = thetas
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - centre).abs().total_cmp(&(b.1 - centre).abs()))
        .map(|(i, _)| i)?;
    let half = 0.5 * values[peak];
    let t0 = thetas[peak];

    let crossing = |range: &mut dyn Iterator<Item = usize>| -> Option<f64> {
        let mut prev = peak;
        for i in range {
            if values[i] < half {
                let (ta, va) = (thetas[prev], values[prev]);
                let (tb, vb) = (thetas[i], values[i]);
                let t = ta + (half - va) * (tb - ta) / (vb - va);
                return Some((t - t0).abs());
            }
            prev = i;
        }
        None
    };
    let left = crossing(&mut (0..peak).rev());
    let right = crossing(&mut (peak + 1..thetas.len()));
    match (left, right) {
        (Some(l), Some(r)) => Some(l + r),
        (Some(w), None) | (None, Some(w)) => Some(2.0 * w),
        (None, None) => None,
    }
}

/// Distance from a revival at which the thermal modulus has dropped by a
/// factor `exp(-drop)`. With `drop = 1/2` this is the Gaussian `sigma`.
pub fn revival_e_folding(kappa: f64, nbar: f64, drop: f64) -> f64 {
    // Solve kappa^2 (2 nbar + 1) (1 - cos d) = drop for d in (0, pi].
    let a = kappa * kappa * (2.0 * nbar + 1.0);
    let c = (drop / (2.0 * a)).min(1.0);
    2.0 * c.sqrt().asin()
}
