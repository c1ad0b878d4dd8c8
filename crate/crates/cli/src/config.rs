//! Flat `key = value` run configuration.
//!
//! One pair per line, `#` starts a comment. Unknown keys are rejected and
//! missing keys keep their defaults. Quantities carry their SI unit in the
//! key name. `auto` is accepted for values normally derived from others.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;
use std::str::FromStr;

use optomirror::decoherence::{DecoherenceModel, SeparationMode};
use optomirror::feasibility::{roundtrip_loss, FeasibilityInputs, GasParams};
use optomirror::montecarlo::{uniform_phase_scan, LeakModel, McConfig, McDecoherence};
use optomirror::params::{
    derive_coupling, omega_m_from_roundtrips, CavityParams, CouplingDerived, EnvironmentParams,
    MirrorParams, HELIUM_MASS,
};
use optomirror::closed_form::revival_sigma;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeakChoice {
    Window,
    Exponential,
}

impl LeakChoice {
    fn as_str(&self) -> &'static str {
        match self {
            LeakChoice::Window => "window",
            LeakChoice::Exponential => "exponential",
        }
    }
}

impl FromStr for LeakChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "window" => Ok(LeakChoice::Window),
            "exponential" => Ok(LeakChoice::Exponential),
            other => Err(format!("unknown leak model `{other}` (expected window or exponential)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub cavity_length_m: f64,
    pub cavity_wavelength_m: f64,
    pub cavity_roundtrips: f64,
    pub cavity_loss_per_reflection: f64,
    pub cavity_transmission: f64,

    pub mirror_mass_kg: f64,
    /// `None`: derived from the roundtrip count.
    pub mirror_omega_m_rad_s: Option<f64>,
    pub mirror_quality_factor: f64,

    pub env_temperature_k: f64,
    pub env_detection_efficiency: f64,
    pub env_mean_photons_per_pulse: f64,
    /// `None`: one pulse per mechanical period.
    pub env_repetition_rate_hz: Option<f64>,

    pub gas_density_per_m3: f64,
    pub gas_temperature_k: f64,
    pub gas_molecule_mass_kg: f64,
    pub gas_area_m2: f64,

    /// `None`: `g / omega_m` from the cavity and mirror.
    pub model_kappa: Option<f64>,

    pub decoherence_enabled: bool,
    pub decoherence_mode: SeparationMode,

    pub visibility_theta_min: f64,
    pub visibility_theta_max: f64,
    pub visibility_samples: usize,

    pub validate_points: usize,
    pub validate_tolerance: f64,
    pub validate_n_max: usize,
    pub validate_kappa_max: f64,
    pub validate_beta_max: f64,

    pub mc_seed: u64,
    pub mc_runs: u64,
    pub mc_phase_steps: usize,
    pub mc_leak_model: LeakChoice,
    /// `None`: a tenth of the revival peak's Gaussian width.
    pub mc_window_halfwidth: Option<f64>,
    pub mc_interferometer_phase: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            cavity_length_m: 0.05,
            cavity_wavelength_m: 630e-9,
            cavity_roundtrips: 5.6e6,
            cavity_loss_per_reflection: 3e-7,
            cavity_transmission: 1e-7,
            mirror_mass_kg: 5e-12,
            mirror_omega_m_rad_s: None,
            mirror_quality_factor: 1e5,
            env_temperature_k: 60e-6,
            env_detection_efficiency: 0.7,
            env_mean_photons_per_pulse: 0.1,
            env_repetition_rate_hz: None,
            gas_density_per_m3: 1e8,
            gas_temperature_k: 4.0,
            gas_molecule_mass_kg: HELIUM_MASS,
            gas_area_m2: 6e-10,
            model_kappa: None,
            decoherence_enabled: false,
            decoherence_mode: SeparationMode::FixedWidth,
            visibility_theta_min: 0.0,
            visibility_theta_max: TAU,
            visibility_samples: 2001,
            validate_points: 200,
            validate_tolerance: 1e-6,
            validate_n_max: 96,
            validate_kappa_max: 1.5,
            validate_beta_max: 2.0,
            mc_seed: 1,
            mc_runs: 100_000,
            mc_phase_steps: 8,
            mc_leak_model: LeakChoice::Window,
            mc_window_halfwidth: None,
            mc_interferometer_phase: 0.0,
        }
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64, CliError> {
    value
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::Config(format!("`{key}`: `{value}` is not a finite number")))
}

fn parse_auto(key: &str, value: &str) -> Result<Option<f64>, CliError> {
    if value == "auto" {
        Ok(None)
    } else {
        parse_f64(key, value).map(Some)
    }
}

fn parse_int<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse::<T>()
        .map_err(|_| CliError::Config(format!("`{key}`: `{value}` is not a non-negative integer")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, CliError> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(CliError::Config(format!("`{key}`: expected true or false, got `{value}`"))),
    }
}

fn fmt_auto(value: Option<f64>) -> String {
    value.map_or_else(|| "auto".to_string(), |v| format!("{v:?}"))
}

impl RunConfig {
    /// Applies one `key = value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let value = value.trim();
        match key.trim() {
            "cavity.length_m" => self.cavity_length_m = parse_f64(key, value)?,
            "cavity.wavelength_m" => self.cavity_wavelength_m = parse_f64(key, value)?,
            "cavity.roundtrips" => self.cavity_roundtrips = parse_f64(key, value)?,
            "cavity.loss_per_reflection" => self.cavity_loss_per_reflection = parse_f64(key, value)?,
            "cavity.transmission" => self.cavity_transmission = parse_f64(key, value)?,
            "mirror.mass_kg" => self.mirror_mass_kg = parse_f64(key, value)?,
            "mirror.omega_m_rad_s" => self.mirror_omega_m_rad_s = parse_auto(key, value)?,
            "mirror.quality_factor" => self.mirror_quality_factor = parse_f64(key, value)?,
            "env.temperature_K" => self.env_temperature_k = parse_f64(key, value)?,
            "env.detection_efficiency" => self.env_detection_efficiency = parse_f64(key, value)?,
            "env.mean_photons_per_pulse" => self.env_mean_photons_per_pulse = parse_f64(key, value)?,
            "env.repetition_rate_Hz" => self.env_repetition_rate_hz = parse_auto(key, value)?,
            "gas.density_per_m3" => self.gas_density_per_m3 = parse_f64(key, value)?,
            "gas.temperature_K" => self.gas_temperature_k = parse_f64(key, value)?,
            "gas.molecule_mass_kg" => self.gas_molecule_mass_kg = parse_f64(key, value)?,
            "gas.area_m2" => self.gas_area_m2 = parse_f64(key, value)?,
            "model.kappa" => self.model_kappa = parse_auto(key, value)?,
            "decoherence.enabled" => self.decoherence_enabled = parse_bool(key, value)?,
            "decoherence.mode" => {
                self.decoherence_mode = value.parse().map_err(|e: String| CliError::Config(e))?
            }
            "visibility.theta_min" => self.visibility_theta_min = parse_f64(key, value)?,
            "visibility.theta_max" => self.visibility_theta_max = parse_f64(key, value)?,
            "visibility.samples" => self.visibility_samples = parse_int(key, value)?,
            "validate.points" => self.validate_points = parse_int(key, value)?,
            "validate.tolerance" => self.validate_tolerance = parse_f64(key, value)?,
            "validate.n_max" => self.validate_n_max = parse_int(key, value)?,
            "validate.kappa_max" => self.validate_kappa_max = parse_f64(key, value)?,
            "validate.beta_max" => self.validate_beta_max = parse_f64(key, value)?,
            "mc.seed" => self.mc_seed = parse_int(key, value)?,
            "mc.runs" => self.mc_runs = parse_int(key, value)?,
            "mc.phase_steps" => self.mc_phase_steps = parse_int(key, value)?,
            "mc.leak_model" => {
                self.mc_leak_model = value.parse().map_err(|e: String| CliError::Config(e))?
            }
            "mc.window_halfwidth" => self.mc_window_halfwidth = parse_auto(key, value)?,
            "mc.interferometer_phase" => self.mc_interferometer_phase = parse_f64(key, value)?,
            other => return Err(CliError::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Applies a `key=value` override as given on the command line.
    pub fn apply_override(&mut self, assignment: &str) -> Result<(), CliError> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("override `{assignment}` is not key=value")))?;
        self.set(key, value)
    }

    /// Parses a configuration file body on top of the defaults.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut config = RunConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected key = value, got `{raw}`", lineno + 1))
            })?;
            config
                .set(key, value)
                .map_err(|e| CliError::Config(format!("line {}: {}", lineno + 1, e.message())))?;
        }
        Ok(config)
    }

    /// All keys with their current values, in file order.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        vec![
            ("cavity.length_m", format!("{:?}", self.cavity_length_m)),
            ("cavity.wavelength_m", format!("{:?}", self.cavity_wavelength_m)),
            ("cavity.roundtrips", format!("{:?}", self.cavity_roundtrips)),
            ("cavity.loss_per_reflection", format!("{:?}", self.cavity_loss_per_reflection)),
            ("cavity.transmission", format!("{:?}", self.cavity_transmission)),
            ("mirror.mass_kg", format!("{:?}", self.mirror_mass_kg)),
            ("mirror.omega_m_rad_s", fmt_auto(self.mirror_omega_m_rad_s)),
            ("mirror.quality_factor", format!("{:?}", self.mirror_quality_factor)),
            ("env.temperature_K", format!("{:?}", self.env_temperature_k)),
            ("env.detection_efficiency", format!("{:?}", self.env_detection_efficiency)),
            ("env.mean_photons_per_pulse", format!("{:?}", self.env_mean_photons_per_pulse)),
            ("env.repetition_rate_Hz", fmt_auto(self.env_repetition_rate_hz)),
            ("gas.density_per_m3", format!("{:?}", self.gas_density_per_m3)),
            ("gas.temperature_K", format!("{:?}", self.gas_temperature_k)),
            ("gas.molecule_mass_kg", format!("{:?}", self.gas_molecule_mass_kg)),
            ("gas.area_m2", format!("{:?}", self.gas_area_m2)),
            ("model.kappa", fmt_auto(self.model_kappa)),
            ("decoherence.enabled", self.decoherence_enabled.to_string()),
            ("decoherence.mode", self.decoherence_mode.as_str().to_string()),
            ("visibility.theta_min", format!("{:?}", self.visibility_theta_min)),
            ("visibility.theta_max", format!("{:?}", self.visibility_theta_max)),
            ("visibility.samples", self.visibility_samples.to_string()),
            ("validate.points", self.validate_points.to_string()),
            ("validate.tolerance", format!("{:?}", self.validate_tolerance)),
            ("validate.n_max", self.validate_n_max.to_string()),
            ("validate.kappa_max", format!("{:?}", self.validate_kappa_max)),
            ("validate.beta_max", format!("{:?}", self.validate_beta_max)),
            ("mc.seed", self.mc_seed.to_string()),
            ("mc.runs", self.mc_runs.to_string()),
            ("mc.phase_steps", self.mc_phase_steps.to_string()),
            ("mc.leak_model", self.mc_leak_model.as_str().to_string()),
            ("mc.window_halfwidth", fmt_auto(self.mc_window_halfwidth)),
            ("mc.interferometer_phase", format!("{:?}", self.mc_interferometer_phase)),
        ]
    }

    /// Serialises to the file format accepted by [`RunConfig::parse`].
    pub fn to_kv_string(&self) -> String {
        let mut out = String::new();
        for (key, value) in self.entries() {
            let _ = writeln!(out, "{key} = {value}");
        }
        out
    }

    pub fn omega_m(&self) -> f64 {
        self.mirror_omega_m_rad_s
            .unwrap_or_else(|| omega_m_from_roundtrips(self.cavity_roundtrips, self.cavity_length_m))
    }

    pub fn cavity(&self) -> CavityParams {
        CavityParams {
            length: self.cavity_length_m,
            wavelength: self.cavity_wavelength_m,
            loss_per_reflection: self.cavity_loss_per_reflection,
            transmission: self.cavity_transmission,
        }
    }

    pub fn mirror(&self) -> MirrorParams {
        MirrorParams {
            mass: self.mirror_mass_kg,
            omega_m: self.omega_m(),
            quality_factor: self.mirror_quality_factor,
        }
    }

    pub fn environment(&self) -> EnvironmentParams {
        EnvironmentParams {
            temperature: self.env_temperature_k,
            detection_efficiency: self.env_detection_efficiency,
            mean_photons_per_pulse: self.env_mean_photons_per_pulse,
            repetition_rate: self.env_repetition_rate_hz.unwrap_or(self.omega_m() / (2.0 * PI)),
        }
    }

    pub fn gas(&self) -> GasParams {
        GasParams {
            density: self.gas_density_per_m3,
            temperature: self.gas_temperature_k,
            molecule_mass: self.gas_molecule_mass_kg,
            area: self.gas_area_m2,
        }
    }

    pub fn feasibility_inputs(&self) -> FeasibilityInputs {
        FeasibilityInputs {
            cavity: self.cavity(),
            mirror: self.mirror(),
            env: self.environment(),
            gas: self.gas(),
            n_roundtrips: self.cavity_roundtrips,
        }
    }

    pub fn coupling(&self) -> Result<CouplingDerived, CliError> {
        Ok(derive_coupling(&self.cavity(), &self.mirror(), self.env_temperature_k)?)
    }

    /// `model.kappa` if set, otherwise the derived coupling.
    pub fn kappa(&self) -> Result<f64, CliError> {
        match self.model_kappa {
            Some(k) if k >= 0.0 => Ok(k),
            Some(k) => Err(CliError::Config(format!("model.kappa = {k} must be >= 0"))),
            None => Ok(self.coupling()?.kappa),
        }
    }

    pub fn decoherence_model(&self) -> Option<DecoherenceModel> {
        self.decoherence_enabled.then(|| {
            let mirror = self.mirror();
            DecoherenceModel::new(
                mirror.gamma_m(),
                self.env_temperature_k,
                mirror.mass,
                self.decoherence_mode,
            )
        })
    }

    /// Monte Carlo settings. `nbar` and `kappa` come from the physical
    /// parameters.
    pub fn mc_config(&self) -> Result<McConfig, CliError> {
        let derived = self.coupling()?;
        let kappa = self.kappa()?;
        let loss = roundtrip_loss(self.cavity_loss_per_reflection, self.cavity_transmission);
        let total = self.cavity_loss_per_reflection + self.cavity_transmission;
        let absorption_probability =
            if total > 0.0 { self.cavity_loss_per_reflection / total } else { 0.0 };
        let leak_model = match self.mc_leak_model {
            LeakChoice::Exponential => LeakModel::Exponential,
            LeakChoice::Window => LeakModel::Window { centre: TAU, half_width: self.window_halfwidth(kappa, derived.nbar) },
        };
        Ok(McConfig {
            kappa,
            nbar: derived.nbar,
            n_runs: self.mc_runs,
            seed: self.mc_seed,
            mean_photons: self.env_mean_photons_per_pulse,
            leak_rate_per_theta: loss * self.cavity_roundtrips / TAU,
            absorption_probability,
            leak_model,
            interferometer_phase: self.mc_interferometer_phase,
            phase_scan: uniform_phase_scan(self.mc_phase_steps),
            decoherence: self
                .decoherence_model()
                .map(|model| McDecoherence { model, omega_m: self.omega_m() }),
        })
    }

    pub fn window_halfwidth(&self, kappa: f64, nbar: f64) -> f64 {
        self.mc_window_halfwidth
            .unwrap_or_else(|| (0.1 * revival_sigma(kappa, nbar)).min(PI))
    }
}
