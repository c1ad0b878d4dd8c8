//! Stochastic simulation of the measurement protocol.
//!
//! Each run prepares the mirror in a coherent state drawn from the thermal
//! distribution, sends a weak pulse, lets the photon leave the cavity at a
//! random phase `theta` and records which output port fires. Runs are
//! independent and each draws from its own ChaCha stream, selected by the
//! run index, so a seed fixes the whole event list regardless of how the runs
//! are scheduled across threads.

use std::f64::consts::TAU;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Normal};
use rayon::prelude::*;

use crate::closed_form::{off_diagonal_coherent, off_diagonal_thermal};
use crate::decoherence::DecoherenceModel;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Detector {
    D1,
    D2,
}

impl Detector {
    pub fn as_str(&self) -> &'static str {
        match self {
            Detector::D1 => "D1",
            Detector::D2 => "D2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionEvent {
    pub run_index: u64,
    /// Mechanical phase at which the photon left the cavity.
    pub theta_leak: f64,
    pub detector: Detector,
    /// Interferometer phase used for this run.
    pub phase_setting: f64,
}

/// When the photon leaves the cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LeakModel {
    /// Exponential decay at `McConfig::leak_rate_per_theta`; a share
    /// `McConfig::absorption_probability` of the decays are absorptions that
    /// produce no event.
    Exponential,
    /// Post-selected runs: the photon leaves uniformly within
    /// `centre +/- half_width` and is always detected.
    Window { centre: f64, half_width: f64 },
}

/// Decoherence applied to each run's coherence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McDecoherence {
    pub model: DecoherenceModel,
    pub omega_m: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct McConfig {
    pub kappa: f64,
    pub nbar: f64,
    pub n_runs: u64,
    pub seed: u64,
    /// Mean photon number of the weak input pulse.
    pub mean_photons: f64,
    /// Cavity decay rate per unit `theta`, `eps N / (2 pi)`.
    pub leak_rate_per_theta: f64,
    /// Probability that a decay is an absorption rather than a leak.
    pub absorption_probability: f64,
    pub leak_model: LeakModel,
    /// Fixed interferometer phase offset.
    pub interferometer_phase: f64,
    /// Phase settings cycled through by run index. Empty means a single
    /// setting of 0.
    pub phase_scan: Vec<f64>,
    pub decoherence: Option<McDecoherence>,
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |name, value, reason| Err(Error::InvalidParameter { name, value, reason });
        if self.n_runs == 0 {
            return bad("mc.runs", 0.0, "must be > 0");
        }
        if !(self.leak_rate_per_theta >= 0.0) || !self.leak_rate_per_theta.is_finite() {
            return bad("mc.leak_rate_per_theta", self.leak_rate_per_theta, "must be finite and >= 0");
        }
        if !(0.0..=1.0).contains(&self.absorption_probability) {
            return bad("mc.absorption_probability", self.absorption_probability, "must lie in [0, 1]");
        }
        if !(self.nbar >= 0.0) || !(self.kappa >= 0.0) || !(self.mean_photons >= 0.0) {
            return bad("mc.nbar/kappa/mean_photons", f64::NAN, "must be >= 0");
        }
        if matches!(self.leak_model, LeakModel::Exponential) && self.leak_rate_per_theta == 0.0 {
            return bad("mc.leak_rate_per_theta", 0.0, "must be > 0 for exponential leakage");
        }
        if let LeakModel::Window { centre, half_width } = self.leak_model {
            if !(half_width > 0.0) || half_width >= TAU {
                return bad("mc.window_halfwidth", half_width, "must lie in (0, 2 pi)");
            }
            if !(centre - half_width >= 0.0) || !centre.is_finite() {
                return bad("mc.window_centre", centre, "window must lie at theta >= 0");
            }
        }
        Ok(())
    }

    /// Interferometer phase for a given run.
    pub fn phase_setting(&self, run_index: u64) -> f64 {
        let scan = if self.phase_scan.is_empty() {
            0.0
        } else {
            self.phase_scan[(run_index % self.phase_scan.len() as u64) as usize]
        };
        self.interferometer_phase + scan
    }

    fn attenuation(&self, theta: f64) -> f64 {
        self.decoherence
            .map_or(1.0, |d| d.model.attenuation_factor(self.kappa, d.omega_m, theta))
    }
}

/// `n` phases evenly spaced over `[0, 2 pi)`.
pub fn uniform_phase_scan(n: usize) -> Vec<f64> {
    (0..n).map(|k| TAU * k as f64 / n as f64).collect()
}

/// Random stream for one run.
pub fn run_rng(seed: u64, run_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(run_index);
    rng
}

/// Coherent amplitude drawn from the thermal P-function
/// `exp(-|beta|^2 / nbar) / (pi nbar)`.
pub fn sample_thermal_beta<R: Rng + ?Sized>(nbar: f64, rng: &mut R) -> Complex64 {
    if nbar <= 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let normal = Normal::new(0.0, (nbar / 2.0).sqrt()).expect("finite sigma");
    let re = normal.sample(rng);
    let im = normal.sample(rng);
    Complex64::new(re, im)
}

/// What happened in one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RunOutcome {
    NoPhoton,
    /// Two or more photons in the pulse; discarded.
    MultiPhoton,
    /// Photon absorbed or scattered inside the cavity.
    Absorbed,
    Detected(DetectionEvent),
}

impl RunOutcome {
    pub fn event(&self) -> Option<DetectionEvent> {
        match self {
            RunOutcome::Detected(e) => Some(*e),
            _ => None,
        }
    }
}

/// Simulates one run. The draws are, in order: photon number, thermal
/// amplitude, exit phase, absorption, detector.
pub fn simulate_run<R: Rng + ?Sized>(config: &McConfig, run_index: u64, rng: &mut R) -> RunOutcome {
    let p0 = (-config.mean_photons).exp();
    let p1 = config.mean_photons * p0;
    let u: f64 = rng.random();
    if u < p0 {
        return RunOutcome::NoPhoton;
    }
    if u >= p0 + p1 {
        return RunOutcome::MultiPhoton;
    }

    let beta = sample_thermal_beta(config.nbar, rng);
    let theta = match config.leak_model {
        LeakModel::Exponential => {
            let theta = Exp::new(config.leak_rate_per_theta).expect("positive rate").sample(rng);
            if rng.random::<f64>() < config.absorption_probability {
                return RunOutcome::Absorbed;
            }
            theta
        }
        LeakModel::Window { centre, half_width } => {
            rng.random_range((centre - half_width)..(centre + half_width))
        }
    };

    let phase_setting = config.phase_setting(run_index);
    let coherence = off_diagonal_coherent(config.kappa, beta, theta).value * config.attenuation(theta);
    // 1/2 (1 + V cos(arg + phi)) = 1/2 + Re[coherence e^{i phi}]
    let p_d1 = (0.5 + (coherence * Complex64::from_polar(1.0, phase_setting)).re).clamp(0.0, 1.0);
    let detector = if rng.random::<f64>() < p_d1 { Detector::D1 } else { Detector::D2 };
    RunOutcome::Detected(DetectionEvent { run_index, theta_leak: theta, detector, phase_setting })
}

/// Run bookkeeping.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunCounts {
    pub no_photon: u64,
    pub multi_photon: u64,
    pub absorbed: u64,
    pub detected: u64,
}

impl RunCounts {
    pub fn total(&self) -> u64 {
        self.no_photon + self.multi_photon + self.absorbed + self.detected
    }

    /// Fraction of non-empty pulses that were discarded as multi-photon.
    pub fn multi_photon_fraction(&self) -> f64 {
        let non_empty = self.total() - self.no_photon;
        if non_empty == 0 {
            0.0
        } else {
            self.multi_photon as f64 / non_empty as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    pub events: Vec<DetectionEvent>,
    pub counts: RunCounts,
}

/// Runs all `config.n_runs` in parallel. The result is independent of the
/// thread count.
pub fn simulate(config: &McConfig) -> Result<Simulation> {
    config.validate()?;
    let outcomes: Vec<RunOutcome> = (0..config.n_runs)
        .into_par_iter()
        .map(|i| simulate_run(config, i, &mut run_rng(config.seed, i)))
        .collect();

    let mut counts = RunCounts::default();
    let mut events = Vec::new();
    for outcome in outcomes {
        match outcome {
            RunOutcome::NoPhoton => counts.no_photon += 1,
            RunOutcome::MultiPhoton => counts.multi_photon += 1,
            RunOutcome::Absorbed => counts.absorbed += 1,
            RunOutcome::Detected(e) => {
                counts.detected += 1;
                events.push(e);
            }
        }
    }
    Ok(Simulation { events, counts })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibilityEstimate {
    pub visibility: f64,
    pub stderr: f64,
    /// Fitted fringe offset `phi_0`.
    pub phase_offset: f64,
    /// Events used in the fit.
    pub n_events: usize,
}

/// Fits the D1 fraction per phase setting to `a + b cos(phi) + c sin(phi)`,
/// i.e. `A (1 + V cos(phi + phi_0))`, by weighted least squares.
///
/// Only events with `theta_leak` in `[window.0, window.1]` are used; each is
/// binned to the nearest entry of `phase_scan`. The standard error uses
/// binomial variances at the fitted fractions.
pub fn estimate_visibility(
    events: &[DetectionEvent],
    window: (f64, f64),
    phase_scan: &[f64],
) -> Result<VisibilityEstimate> {
    if phase_scan.len() < 3 {
        return Err(Error::InsufficientData("a fringe fit needs at least 3 phase settings".into()));
    }
    let mut trials = vec![0u64; phase_scan.len()];
    let mut d1 = vec![0u64; phase_scan.len()];
    let mut n_events = 0;
    for e in events.iter().filter(|e| e.theta_leak >= window.0 && e.theta_leak <= window.1) {
        let bin = nearest_phase(phase_scan, e.phase_setting);
        trials[bin] += 1;
        if e.detector == Detector::D1 {
            d1[bin] += 1;
        }
        n_events += 1;
    }
    let used: Vec<usize> = (0..phase_scan.len()).filter(|&k| trials[k] > 0).collect();
    if used.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "{n_events} events in window [{}, {}] cover {} phase settings",
            window.0,
            window.1,
            used.len()
        )));
    }

    let row = |k: usize| Vector3::new(1.0, phase_scan[k].cos(), phase_scan[k].sin());
    let mut xtwx = Matrix3::zeros();
    let mut xtwy = Vector3::zeros();
    for &k in &used {
        let x = row(k);
        let w = trials[k] as f64;
        let f = d1[k] as f64 / w;
        xtwx += w * x * x.transpose();
        xtwy += w * f * x;
    }
    let inv = xtwx
        .try_inverse()
        .ok_or_else(|| Error::InsufficientData("degenerate phase settings".into()))?;
    let coef = inv * xtwy;
    let (a, b, c) = (coef[0], coef[1], coef[2]);
    let amp = b.hypot(c);
    let visibility = amp / a;

    // Sandwich covariance with binomial variance p(1-p)/n per bin.
    let mut meat = Matrix3::zeros();
    for &k in &used {
        let x = row(k);
        let n = trials[k] as f64;
        let p = x.dot(&coef).clamp(0.0, 1.0);
        meat += n * p * (1.0 - p) * x * x.transpose();
    }
    let cov = inv * meat * inv;
    let amp_safe = amp.max(f64::MIN_POSITIVE);
    let grad = Vector3::new(-amp / (a * a), b / (a * amp_safe), c / (a * amp_safe));
    let stderr = (grad.transpose() * cov * grad)[(0, 0)].max(0.0).sqrt();

    Ok(VisibilityEstimate { visibility, stderr, phase_offset: c.atan2(b) * -1.0, n_events })
}

fn nearest_phase(scan: &[f64], phase: f64) -> usize {
    let dist = |a: f64| {
        let d = (a - phase).rem_euclid(TAU);
        d.min(TAU - d)
    };
    (0..scan.len())
        .min_by(|&i, &j| dist(scan[i]).total_cmp(&dist(scan[j])))
        .unwrap_or(0)
}

/// Visibility a fringe fit should find for events spread uniformly over
/// `window`: the modulus of the window-averaged thermal coherence, with
/// optional attenuation.
pub fn expected_window_visibility(
    kappa: f64,
    nbar: f64,
    window: (f64, f64),
    attenuation: Option<&dyn Fn(f64) -> f64>,
) -> f64 {
    const STEPS: usize = 4000;
    let h = (window.1 - window.0) / STEPS as f64;
    let sum: Complex64 = (0..STEPS)
        .map(|i| {
            let theta = window.0 + (i as f64 + 0.5) * h;
            off_diagonal_thermal(kappa, nbar, theta).value * attenuation.map_or(1.0, |f| f(theta))
        })
        .sum();
    2.0 * (sum / STEPS as f64).norm()
}

/// Monte Carlo average of the coherent-state coherence over thermal `beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalAverage {
    pub mean: Complex64,
    /// Standard error of `mean` (complex magnitude).
    pub stderr: f64,
}

pub fn thermal_average_check<R: Rng + ?Sized>(
    kappa: f64,
    nbar: f64,
    theta: f64,
    n_samples: usize,
    rng: &mut R,
) -> ThermalAverage {
    assert!(n_samples > 0, "n_samples must be positive");
    let samples: Vec<Complex64> = (0..n_samples)
        .map(|_| off_diagonal_coherent(kappa, sample_thermal_beta(nbar, rng), theta).value)
        .collect();
    let mean = samples.iter().sum::<Complex64>() / n_samples as f64;
    let stderr = if n_samples > 1 {
        let var = samples.iter().map(|s| (s - mean).norm_sqr()).sum::<f64>() / (n_samples - 1) as f64;
        (var / n_samples as f64).sqrt()
    } else {
        f64::INFINITY
    };
    ThermalAverage { mean, stderr }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn base_config() -> McConfig {
        McConfig {
            kappa: 1.0,
            nbar: 2500.0,
            n_runs: 10_000,
            seed: 7,
            mean_photons: 0.1,
            leak_rate_per_theta: 8e-7 * 5.6e6 / TAU,
            absorption_probability: 0.75,
            leak_model: LeakModel::Exponential,
            interferometer_phase: 0.0,
            phase_scan: uniform_phase_scan(8),
            decoherence: None,
        }
    }

    #[test]
    fn thermal_beta_moments() {
        let mut rng = run_rng(1, 0);
        assert_eq!(sample_thermal_beta(0.0, &mut rng), Complex64::new(0.0, 0.0));
        let n = 100_000;
        let nbar = 2500.0;
        let samples: Vec<Complex64> = (0..n).map(|_| sample_thermal_beta(nbar, &mut rng)).collect();
        let mean_sq = samples.iter().map(|b| b.norm_sqr()).sum::<f64>() / n as f64;
        // |beta|^2 is exponential with mean nbar, so its std is nbar.
        let sigma = nbar / (n as f64).sqrt();
        assert!((mean_sq - nbar).abs() < 3.0 * sigma, "{mean_sq}");
        let mean = samples.iter().sum::<Complex64>() / n as f64;
        let sigma_mean = (nbar / 2.0 / n as f64).sqrt();
        assert!(mean.re.abs() < 3.0 * sigma_mean && mean.im.abs() < 3.0 * sigma_mean);
    }

    #[test]
    fn uncoupled_detector_probability() {
        // kappa = 0: p(D1) = (1 + cos phi) / 2 exactly, independent of beta.
        for phi in [0.0, 1.0, PI / 2.0, PI] {
            let cfg = McConfig {
                kappa: 0.0,
                n_runs: 40_000,
                mean_photons: 5.0,
                phase_scan: vec![],
                interferometer_phase: phi,
                leak_model: LeakModel::Window { centre: TAU, half_width: 0.1 },
                ..base_config()
            };
            let sim = simulate(&cfg).unwrap();
            // mean_photons = 5 makes most runs multi-photon; use what is left.
            let n = sim.events.len() as f64;
            let p = 0.5 * (1.0 + phi.cos());
            let got = sim.events.iter().filter(|e| e.detector == Detector::D1).count() as f64 / n;
            let sigma = (p * (1.0 - p) / n).sqrt().max(1e-12);
            assert!((got - p).abs() <= 3.0 * sigma + 1e-12, "phi {phi}: {got} vs {p}");
        }
    }

    #[test]
    fn zero_visibility_is_balanced() {
        let cfg = McConfig {
            n_runs: 100_000,
            mean_photons: 100.0_f64.ln(),
            leak_model: LeakModel::Window { centre: PI, half_width: 0.5 },
            ..base_config()
        };
        let sim = simulate(&cfg).unwrap();
        let n = sim.events.len() as f64;
        let d1 = sim.events.iter().filter(|e| e.detector == Detector::D1).count() as f64;
        let chi2 = (d1 - n / 2.0).powi(2) / (n / 2.0) + ((n - d1) - n / 2.0).powi(2) / (n / 2.0);
        // 1 dof, 99 % quantile
        assert!(chi2 < 6.635, "chi2 {chi2}");
    }

    #[test]
    fn reproducible_streams() {
        let cfg = base_config();
        let a = simulate(&cfg).unwrap();
        let b = simulate(&cfg).unwrap();
        assert_eq!(a, b);
        let c = simulate(&McConfig { seed: 8, ..cfg }).unwrap();
        assert_ne!(a.events, c.events);
    }

    #[test]
    fn multi_photon_fraction_matches_poisson() {
        let cfg = McConfig { n_runs: 200_000, mean_photons: 0.1, ..base_config() };
        let sim = simulate(&cfg).unwrap();
        let expected = crate::feasibility::two_photon_ratio(0.1);
        let non_empty = (sim.counts.total() - sim.counts.no_photon) as f64;
        let sigma = (expected * (1.0 - expected) / non_empty).sqrt();
        assert!((sim.counts.multi_photon_fraction() - expected).abs() < 3.0 * sigma);
        assert_eq!(sim.counts.total(), 200_000);
    }

    /// Kolmogorov-Smirnov statistic against the exponential CDF.
    fn ks_exponential(samples: &mut [f64], rate: f64) -> f64 {
        samples.sort_by(f64::total_cmp);
        let n = samples.len() as f64;
        samples
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let cdf = 1.0 - (-rate * x).exp();
                (cdf - i as f64 / n).abs().max(((i + 1) as f64 / n - cdf).abs())
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn simulated_leak_phases_are_exponential() {
        let cfg = McConfig {
            n_runs: 300_000,
            mean_photons: 1.0,
            absorption_probability: 0.0,
            ..base_config()
        };
        let sim = simulate(&cfg).unwrap();
        let mut thetas: Vec<f64> = sim.events.iter().map(|e| e.theta_leak).collect();
        assert!(thetas.len() > 100_000);
        let d = ks_exponential(&mut thetas, cfg.leak_rate_per_theta);
        assert!(d < 1.628 / (thetas.len() as f64).sqrt(), "D = {d}");
    }

    fn synthetic_events(visibility: f64, per_phase: u64, offset: f64, seed: u64) -> Vec<DetectionEvent> {
        let scan = uniform_phase_scan(8);
        let mut rng = run_rng(seed, 0);
        let mut events = Vec::new();
        let mut run = 0;
        for &phi in &scan {
            let p = 0.5 * (1.0 + visibility * (phi + offset).cos());
            for _ in 0..per_phase {
                let detector = if rng.random::<f64>() < p { Detector::D1 } else { Detector::D2 };
                events.push(DetectionEvent { run_index: run, theta_leak: TAU, detector, phase_setting: phi });
                run += 1;
            }
        }
        events
    }

    #[test]
    fn fringe_fit_self_consistency() {
        let scan = uniform_phase_scan(8);
        let window = (TAU - 0.1, TAU + 0.1);

        let est = estimate_visibility(&synthetic_events(1.0, 1250, 0.4, 3), window, &scan).unwrap();
        assert!((est.visibility - 1.0).abs() < 0.02, "{est:?}");
        assert!((est.phase_offset - 0.4).abs() < 0.05, "{est:?}");

        let est = estimate_visibility(&synthetic_events(0.0, 1250, 0.0, 4), window, &scan).unwrap();
        assert!(est.visibility < 3.0 * est.stderr, "{est:?}");

        let est = estimate_visibility(&synthetic_events(0.5, 1250, 1.0, 5), window, &scan).unwrap();
        assert!((est.visibility - 0.5).abs() < 3.0 * est.stderr, "{est:?}");
        assert_eq!(est.n_events, 10_000);
    }

    #[test]
    fn fringe_fit_needs_data() {
        let scan = uniform_phase_scan(8);
        let events = synthetic_events(1.0, 10, 0.0, 1);
        let err = estimate_visibility(&events, (0.0, 1.0), &scan).unwrap_err();
        assert!(matches!(err, Error::InsufficientData(_)));
        assert!(estimate_visibility(&events, (0.0, 10.0), &scan[..2]).is_err());
    }

    #[test]
    fn thermal_average_zero_temperature() {
        let mut rng = run_rng(3, 0);
        let avg = thermal_average_check(0.8, 0.0, 2.0, 10, &mut rng);
        let exact = off_diagonal_coherent(0.8, Complex64::new(0.0, 0.0), 2.0).value;
        assert!((avg.mean - exact).norm() < 1e-15);
    }

    #[test]
    fn thermal_average_stderr_scaling() {
        let mut errs = Vec::new();
        for n in [1_000, 10_000, 100_000] {
            let mut rng = run_rng(11, n as u64);
            errs.push(thermal_average_check(1.0, 10.0, 0.3, n, &mut rng).stderr);
        }
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            assert!((ratio / 10f64.sqrt() - 1.0).abs() < 0.1, "{ratio}");
        }
    }

    #[test]
    fn window_visibility_with_decoherence() {
        use crate::decoherence::SeparationMode;
        let omega_m = TAU * 500.0;
        let model = DecoherenceModel::new(omega_m / 1e5, 1e-3, 5e-12, SeparationMode::FixedWidth);
        let sigma = crate::closed_form::revival_sigma(1.0, 2500.0);
        let half_width = 0.1 * sigma;
        let cfg = McConfig {
            n_runs: 120_000,
            mean_photons: 1.0,
            leak_model: LeakModel::Window { centre: TAU, half_width },
            decoherence: Some(McDecoherence { model, omega_m }),
            ..base_config()
        };
        let sim = simulate(&cfg).unwrap();
        let window = (TAU - half_width, TAU + half_width);
        let est = estimate_visibility(&sim.events, window, &cfg.phase_scan).unwrap();
        assert!(est.n_events >= 10_000);
        let att = |t: f64| model.attenuation_factor(1.0, omega_m, t);
        let expected = expected_window_visibility(1.0, 2500.0, window, Some(&att));
        assert!((expected / att(TAU) - 1.0).abs() < 0.01);
        assert!((est.visibility - expected).abs() < 3.0 * est.stderr, "{est:?} vs {expected}");
        assert!((est.visibility - att(TAU)).abs() < 3.0 * est.stderr + 0.01);
    }

    #[test]
    fn rejects_invalid_config() {
        assert!(simulate(&McConfig { n_runs: 0, ..base_config() }).is_err());
        assert!(simulate(&McConfig { leak_rate_per_theta: -1.0, ..base_config() }).is_err());
        assert!(simulate(&McConfig { absorption_probability: 2.0, ..base_config() }).is_err());
        let cfg = McConfig { leak_model: LeakModel::Window { centre: TAU, half_width: 0.0 }, ..base_config() };
        assert!(simulate(&cfg).is_err());
    }
}
