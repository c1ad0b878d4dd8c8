use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The truncated Fock basis is too small for the requested state.
    #[error("Fock truncation n_max = {n_max} inadequate: tail mass {tail_mass:.3e} (limit {limit:.0e})")]
    Truncation {
        n_max: usize,
        tail_mass: f64,
        limit: f64,
    },

    #[error("Fock truncation n_max = {n_max} below the required {required}")]
    TruncationRule { n_max: usize, required: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter { name, value, reason: "must be finite and > 0" })
    }
}

pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter { name, value, reason: "must be finite and >= 0" })
    }
}

pub(crate) fn unit_interval(name: &'static str, value: f64, closed_top: bool) -> Result<f64> {
    let ok = value.is_finite() && value >= 0.0 && if closed_top { value <= 1.0 } else { value < 1.0 };
    if ok {
        Ok(value)
    } else {
        let reason = if closed_top { "must lie in [0, 1]" } else { "must lie in [0, 1)" };
        Err(Error::InvalidParameter { name, value, reason })
    }
}
