//! Environmental decoherence of the mirror superposition.
//!
//! An Ohmic bath damps coherences between mirror positions separated by
//! `dx` at the rate `gamma_D = gamma_m k T M dx^2 / hbar^2`. The rate is an
//! order-of-magnitude figure: it is strictly valid only on timescales long
//! compared to a mechanical period, and the experiment lasts exactly one.

use num_complex::Complex64;

use crate::params::{classical_occupation, thermal_occupation, HBAR, K_B};

/// How the superposition size entering `gamma_D` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeparationMode {
    /// Constant `dx = sqrt(hbar / (M omega_m))`, one wavepacket width.
    #[default]
    FixedWidth,
    /// `dx(theta) = sqrt(2 hbar / (M omega_m)) |kappa (1 - e^{-i theta})|`,
    /// following the actual branch separation.
    TimeDependent,
}

impl SeparationMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SeparationMode::FixedWidth => "fixed_width",
            SeparationMode::TimeDependent => "time_dependent",
        }
    }
}

impl std::str::FromStr for SeparationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fixed_width" => Ok(SeparationMode::FixedWidth),
            "time_dependent" => Ok(SeparationMode::TimeDependent),
            other => Err(format!("unknown separation mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceModel {
    /// Mechanical damping rate `omega_m / Q`, rad/s.
    pub gamma_m: f64,
    /// Bath temperature, K.
    pub temperature: f64,
    /// Mirror mass, kg.
    pub mass: f64,
    pub separation_mode: SeparationMode,
}

impl DecoherenceModel {
    pub fn new(gamma_m: f64, temperature: f64, mass: f64, separation_mode: SeparationMode) -> Self {
        Self { gamma_m, temperature, mass, separation_mode }
    }

    /// `gamma_D` for a superposition of size `delta_x` (m), in 1/s.
    pub fn decoherence_rate(&self, delta_x: f64) -> f64 {
        self.gamma_m * K_B * self.temperature * self.mass * delta_x * delta_x / (HBAR * HBAR)
    }

    /// `gamma_D * dx^2`-prefactor divided by `omega_m`: the exponent rate per
    /// unit `theta` per unit `dx^2`.
    fn rate_per_theta_per_area(&self, omega_m: f64) -> f64 {
        self.decoherence_rate(1.0) / omega_m
    }

    /// Accumulated decoherence exponent `int_0^theta gamma_D / omega_m`.
    pub fn exponent(&self, kappa: f64, omega_m: f64, theta: f64) -> f64 {
        let theta = theta.max(0.0);
        let per_area = self.rate_per_theta_per_area(omega_m);
        match self.separation_mode {
            SeparationMode::FixedWidth => {
                per_area * fixed_separation(self.mass, omega_m).powi(2) * theta
            }
            SeparationMode::TimeDependent => {
                // |1 - e^{-i t}|^2 = 2 - 2 cos t integrates to 2 theta - 2 sin theta.
                let scale = 2.0 * HBAR / (self.mass * omega_m) * kappa * kappa;
                per_area * scale * (2.0 * theta - 2.0 * theta.sin())
            }
        }
    }

    /// Multiplicative reduction of the photon coherence at `theta`.
    pub fn attenuation_factor(&self, kappa: f64, omega_m: f64, theta: f64) -> f64 {
        (-self.exponent(kappa, omega_m, theta)).exp()
    }

    /// Applies [`Self::attenuation_factor`] to a coherence; the phase is kept.
    pub fn attenuate(&self, value: Complex64, kappa: f64, omega_m: f64, theta: f64) -> Complex64 {
        value * self.attenuation_factor(kappa, omega_m, theta)
    }
}

/// Free-function form of [`DecoherenceModel::decoherence_rate`].
pub fn decoherence_rate(model: &DecoherenceModel, delta_x: f64) -> f64 {
    model.decoherence_rate(delta_x)
}

/// Superposition size of one wavepacket width, `sqrt(hbar / (M omega_m))`.
pub fn fixed_separation(mass: f64, omega_m: f64) -> f64 {
    (HBAR / (mass * omega_m)).sqrt()
}

/// `Q hbar omega_m / (k T)`: the requirement `gamma_D <= omega_m` at one
/// wavepacket separation holds iff this is at least 1.
pub fn quality_condition(quality_factor: f64, temperature: f64, omega_m: f64) -> f64 {
    if temperature <= 0.0 {
        return f64::INFINITY;
    }
    quality_factor / classical_occupation(temperature, omega_m)
}

/// Same margin with the exact Bose-Einstein occupation, `Q / nbar`.
pub fn quality_margin_bose(quality_factor: f64, temperature: f64, omega_m: f64) -> f64 {
    let nbar = thermal_occupation(temperature, omega_m);
    if nbar <= 0.0 {
        f64::INFINITY
    } else {
        quality_factor / nbar
    }
}

/// Temperature at which [`quality_condition`] is exactly 1.
pub fn marginal_temperature(quality_factor: f64, omega_m: f64) -> f64 {
    quality_factor * HBAR * omega_m / K_B
}
