//! Experimental requirements: coupling strength, photon loss, stability,
//! measurement rate, vacuum and cooling.

use std::f64::consts::PI;

use crate::closed_form::revival_width;
use crate::decoherence::{marginal_temperature, quality_condition};
use crate::error::{positive, Result};
use crate::params::{
    derive_coupling, omega_m_from_roundtrips, CavityParams, EnvironmentParams, MirrorParams, C,
    HBAR, HELIUM_MASS, K_B,
};

/// Detected photons per hour in the revival window quoted as the target
/// figure for a ten-minute measurement.
pub const TARGET_COUNTS_PER_HOUR: f64 = 100.0;

/// `2 hbar N^3 L / (pi c M lambda^2)`, equal to `kappa^2` when the mechanical
/// frequency satisfies `2 N L / c = 2 pi / omega_m`. The coupling requirement
/// holds when this is at least 1.
pub fn kappa_squared_condition(n_roundtrips: f64, length: f64, mass: f64, wavelength: f64) -> f64 {
    2.0 * HBAR * n_roundtrips.powi(3) * length / (PI * C * mass * wavelength * wavelength)
}

/// Loss per cavity roundtrip: absorption/scatter plus transmission, once for
/// each of the two mirrors.
pub fn roundtrip_loss(loss_per_reflection: f64, transmission: f64) -> f64 {
    2.0 * (loss_per_reflection + transmission)
}

/// Fraction of photons still in the cavity after `n_roundtrips`,
/// `exp(-eps N)`.
pub fn photon_survival(loss_per_reflection: f64, transmission: f64, n_roundtrips: f64) -> f64 {
    (-roundtrip_loss(loss_per_reflection, transmission) * n_roundtrips).exp()
}

/// Required stability of the cavity length, `lambda / (20 N)`, m.
pub fn stability_requirement(wavelength: f64, n_roundtrips: f64) -> f64 {
    wavelength / (20.0 * n_roundtrips)
}

/// Share of the surviving photons that leak out inside the revival window,
/// `1 / (pi kappa sqrt(nbar))`, capped at 1.
pub fn revival_leak_fraction(kappa: f64, nbar: f64) -> f64 {
    if kappa <= 0.0 || nbar <= 0.0 {
        return 1.0;
    }
    (1.0 / (PI * kappa * nbar.sqrt())).min(1.0)
}

/// Detected counts per hour in the revival window.
pub fn count_rate(env: &EnvironmentParams, survival: f64, leak_fraction: f64) -> f64 {
    env.repetition_rate * counts_per_pulse(env, survival, leak_fraction) * 3600.0
}

fn counts_per_pulse(env: &EnvironmentParams, survival: f64, leak_fraction: f64) -> f64 {
    env.mean_photons_per_pulse * survival * leak_fraction * env.detection_efficiency
}

/// Pulse rate (Hz) that would give `target_per_hour` counts with the other
/// inputs of [`count_rate`] unchanged.
pub fn repetition_rate_for_counts(
    target_per_hour: f64,
    env: &EnvironmentParams,
    survival: f64,
    leak_fraction: f64,
) -> f64 {
    target_per_hour / (3600.0 * counts_per_pulse(env, survival, leak_fraction))
}

/// `P(n >= 2) / P(n >= 1)` for a Poissonian pulse with mean `mu`.
pub fn two_photon_ratio(mu: f64) -> f64 {
    if mu <= 0.0 {
        return 0.0;
    }
    let at_least_one = -(-mu).exp_m1();
    let at_least_two = if mu < 1.0 {
        // e^{-mu} sum_{k>=2} mu^k / k!, avoiding the cancellation in
        // 1 - e^{-mu} (1 + mu).
        let mut term = mu * mu / 2.0;
        let mut sum = 0.0;
        let mut k = 2.0;
        while term > sum * 1e-17 {
            sum += term;
            k += 1.0;
            term *= mu / k;
        }
        (-mu).exp() * sum
    } else {
        1.0 - (-mu).exp() * (1.0 + mu)
    };
    at_least_two / at_least_one
}

/// Residual gas hitting the mirror.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasParams {
    /// Number density, 1/m^3.
    pub density: f64,
    /// Gas temperature, K.
    pub temperature: f64,
    /// Molecular mass, kg.
    pub molecule_mass: f64,
    /// Exposed area, m^2.
    pub area: f64,
}

impl Default for GasParams {
    /// Helium at 4 K, 100 per cm^3, on all six faces of a 10 um cube.
    fn default() -> Self {
        Self { density: 1e8, temperature: 4.0, molecule_mass: HELIUM_MASS, area: 6.0 * 1e-10 }
    }
}

/// Kinetic-theory wall collision rate `n v_mean A / 4`, 1/s.
pub fn gas_collision_rate(density: f64, gas_temperature: f64, molecule_mass: f64, area: f64) -> f64 {
    let v_mean = (8.0 * K_B * gas_temperature / (PI * molecule_mass)).sqrt();
    density * v_mean * area / 4.0
}

/// Measurement-time reduction from cooling to the ground state:
/// the revival window widens by `sqrt(nbar)`.
pub fn cooling_speedup(nbar: f64) -> f64 {
    nbar.max(0.0).sqrt()
}

/// Everything needed for a [`FeasibilityReport`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityInputs {
    pub cavity: CavityParams,
    pub mirror: MirrorParams,
    pub env: EnvironmentParams,
    pub gas: GasParams,
    /// Roundtrips per mechanical period.
    pub n_roundtrips: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityReport {
    pub kappa_sq_ratio: f64,
    /// `g / omega_m` at the mirror's actual frequency.
    pub kappa: f64,
    pub omega_m_implied: f64,
    pub nbar: f64,
    pub survival_fraction: f64,
    pub stability_bound: f64,
    pub revival_width: f64,
    pub revival_leak_fraction: f64,
    pub repetition_rate: f64,
    pub counts_per_hour: f64,
    /// Rate needed for [`TARGET_COUNTS_PER_HOUR`].
    pub repetition_rate_for_target: f64,
    pub two_photon_ratio: f64,
    pub gas_collision_rate: f64,
    pub cooling_speedup: f64,
    pub quality_margin: f64,
    pub marginal_temperature: f64,
}

impl FeasibilityReport {
    /// `(key, value)` pairs in a fixed order, for machine-readable output.
    pub fn entries(&self) -> [(&'static str, f64); 16] {
        [
            ("kappa_sq_ratio", self.kappa_sq_ratio),
            ("kappa", self.kappa),
            ("omega_m_implied_rad_s", self.omega_m_implied),
            ("nbar", self.nbar),
            ("survival_fraction", self.survival_fraction),
            ("stability_bound_m", self.stability_bound),
            ("revival_width_s", self.revival_width),
            ("revival_leak_fraction", self.revival_leak_fraction),
            ("repetition_rate_Hz", self.repetition_rate),
            ("counts_per_hour", self.counts_per_hour),
            ("repetition_rate_for_100_per_hour_Hz", self.repetition_rate_for_target),
            ("two_photon_ratio", self.two_photon_ratio),
            ("gas_collision_rate_per_s", self.gas_collision_rate),
            ("cooling_speedup", self.cooling_speedup),
            ("quality_margin", self.quality_margin),
            ("marginal_temperature_K", self.marginal_temperature),
        ]
    }
}

pub fn full_report(inputs: &FeasibilityInputs) -> Result<FeasibilityReport> {
    let FeasibilityInputs { cavity, mirror, env, gas, n_roundtrips } = *inputs;
    env.validate()?;
    positive("cavity.roundtrips", n_roundtrips)?;
    positive("gas.temperature", gas.temperature)?;
    positive("gas.molecule_mass", gas.molecule_mass)?;
    let derived = derive_coupling(&cavity, &mirror, env.temperature)?;

    let survival = photon_survival(cavity.loss_per_reflection, cavity.transmission, n_roundtrips);
    let leak = revival_leak_fraction(derived.kappa, derived.nbar);
    Ok(FeasibilityReport {
        kappa_sq_ratio: kappa_squared_condition(n_roundtrips, cavity.length, mirror.mass, cavity.wavelength),
        kappa: derived.kappa,
        omega_m_implied: omega_m_from_roundtrips(n_roundtrips, cavity.length),
        nbar: derived.nbar,
        survival_fraction: survival,
        stability_bound: stability_requirement(cavity.wavelength, n_roundtrips),
        revival_width: revival_width(derived.kappa, mirror.omega_m, derived.nbar),
        revival_leak_fraction: leak,
        repetition_rate: env.repetition_rate,
        counts_per_hour: count_rate(&env, survival, leak),
        repetition_rate_for_target: repetition_rate_for_counts(TARGET_COUNTS_PER_HOUR, &env, survival, leak),
        two_photon_ratio: two_photon_ratio(env.mean_photons_per_pulse),
        gas_collision_rate: gas_collision_rate(gas.density, gas.temperature, gas.molecule_mass, gas.area),
        cooling_speedup: cooling_speedup(derived.nbar),
        quality_margin: quality_condition(mirror.quality_factor, env.temperature, mirror.omega_m),
        marginal_temperature: marginal_temperature(mirror.quality_factor, mirror.omega_m),
    })
}
