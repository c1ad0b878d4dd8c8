//! Physical inputs in SI units and the dimensionless quantities derived from
//! them.
//!
//! This is the only module that deals with SI units. Everything downstream
//! works with the coupling `kappa`, the thermal occupation `nbar` and the
//! mechanical phase `theta = omega_m * t`.

use std::f64::consts::PI;

use crate::error::{non_negative, positive, unit_interval, Result};

/// Fundamental constants (exact SI / CODATA 2018 values).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Speed of light, m/s.
    pub c: f64,
    /// Boltzmann constant, J/K.
    pub k_b: f64,
}

impl PhysicalConstants {
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        hbar: 1.054_571_817e-34,
        c: 299_792_458.0,
        k_b: 1.380_649e-23,
    };
}

pub const HBAR: f64 = PhysicalConstants::CODATA.hbar;
pub const C: f64 = PhysicalConstants::CODATA.c;
pub const K_B: f64 = PhysicalConstants::CODATA.k_b;

/// Unified atomic mass unit, kg.
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
/// Mass of a helium-4 atom, kg.
pub const HELIUM_MASS: f64 = 4.002_602 * ATOMIC_MASS_UNIT;

/// The mechanical oscillator carrying the small mirror.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorParams {
    /// Mass `M`, kg.
    pub mass: f64,
    /// Angular frequency `omega_m`, rad/s.
    pub omega_m: f64,
    /// Mechanical quality factor `Q = omega_m / gamma_m`.
    pub quality_factor: f64,
}

impl MirrorParams {
    pub fn validate(&self) -> Result<()> {
        positive("mirror.mass", self.mass)?;
        positive("mirror.omega_m", self.omega_m)?;
        positive("mirror.quality_factor", self.quality_factor)?;
        Ok(())
    }

    /// Mechanical damping rate `gamma_m = omega_m / Q`, rad/s.
    pub fn gamma_m(&self) -> f64 {
        self.omega_m / self.quality_factor
    }

    /// Mechanical period `2 pi / omega_m`, s.
    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega_m
    }
}

/// The high-finesse cavity in the mirror arm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityParams {
    /// Empty-cavity length `L`, m.
    pub length: f64,
    /// Optical wavelength, m.
    pub wavelength: f64,
    /// Absorption and scatter loss per reflection, per mirror.
    pub loss_per_reflection: f64,
    /// Transmission per reflection, per mirror.
    pub transmission: f64,
}

impl CavityParams {
    pub fn validate(&self) -> Result<()> {
        positive("cavity.length", self.length)?;
        positive("cavity.wavelength", self.wavelength)?;
        if self.wavelength >= self.length {
            return Err(crate::Error::InvalidParameter {
                name: "cavity.wavelength",
                value: self.wavelength,
                reason: "must be much smaller than the cavity length",
            });
        }
        unit_interval("cavity.loss_per_reflection", self.loss_per_reflection, false)?;
        unit_interval("cavity.transmission", self.transmission, false)?;
        Ok(())
    }

    /// Optical angular frequency `2 pi c / lambda`, rad/s.
    pub fn omega_c(&self) -> f64 {
        2.0 * PI * C / self.wavelength
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvironmentParams {
    /// Temperature of the mirror's environment, K.
    pub temperature: f64,
    /// Detector efficiency in `[0, 1]`.
    pub detection_efficiency: f64,
    /// Mean photon number per weak pulse.
    pub mean_photons_per_pulse: f64,
    /// Pulse repetition rate, Hz.
    pub repetition_rate: f64,
}

impl EnvironmentParams {
    pub fn validate(&self) -> Result<()> {
        non_negative("env.temperature", self.temperature)?;
        unit_interval("env.detection_efficiency", self.detection_efficiency, true)?;
        non_negative("env.mean_photons_per_pulse", self.mean_photons_per_pulse)?;
        non_negative("env.repetition_rate", self.repetition_rate)?;
        Ok(())
    }
}

/// Dimensionless quantities derived from the SI inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingDerived {
    /// Optical angular frequency, rad/s.
    pub omega_c: f64,
    /// Single-photon optomechanical coupling `g`, rad/s.
    pub g: f64,
    /// `kappa = g / omega_m`.
    pub kappa: f64,
    /// Photon roundtrips per mechanical period, `2 N L / c = 2 pi / omega_m`.
    pub n_roundtrips: f64,
    /// Bose-Einstein occupation of the mechanical mode.
    pub nbar: f64,
    /// Zero-point width `sqrt(hbar / (2 M omega_m))`, m.
    pub x_zp: f64,
}

/// Derives the coupling constants from cavity and mirror parameters.
///
/// `temperature` (K) only enters through `nbar`.
pub fn derive_coupling(
    cavity: &CavityParams,
    mirror: &MirrorParams,
    temperature: f64,
) -> Result<CouplingDerived> {
    cavity.validate()?;
    mirror.validate()?;
    non_negative("env.temperature", temperature)?;

    let omega_c = cavity.omega_c();
    let x_zp = zero_point_width(mirror.mass, mirror.omega_m);
    let g = omega_c / cavity.length * x_zp;
    Ok(CouplingDerived {
        omega_c,
        g,
        kappa: g / mirror.omega_m,
        n_roundtrips: roundtrips_per_period(cavity.length, mirror.omega_m),
        nbar: thermal_occupation(temperature, mirror.omega_m),
        x_zp,
    })
}

pub fn zero_point_width(mass: f64, omega_m: f64) -> f64 {
    (HBAR / (2.0 * mass * omega_m)).sqrt()
}

/// `N = pi c / (L omega_m)`, from `2 N L / c = 2 pi / omega_m`. Not rounded.
pub fn roundtrips_per_period(length: f64, omega_m: f64) -> f64 {
    PI * C / (length * omega_m)
}

/// Inverse of [`roundtrips_per_period`]: the mechanical frequency implied by
/// a roundtrip count.
pub fn omega_m_from_roundtrips(n_roundtrips: f64, length: f64) -> f64 {
    PI * C / (n_roundtrips * length)
}

/// Mean thermal phonon number `1 / (exp(hbar omega_m / k T) - 1)`.
///
/// Returns 0 at `T = 0`.
pub fn thermal_occupation(temperature: f64, omega_m: f64) -> f64 {
    if temperature <= 0.0 {
        return 0.0;
    }
    let x = HBAR * omega_m / (K_B * temperature);
    1.0 / x.exp_m1()
}

/// High-temperature approximation `k T / (hbar omega_m)`.
pub fn classical_occupation(temperature: f64, omega_m: f64) -> f64 {
    K_B * temperature / (HBAR * omega_m)
}
