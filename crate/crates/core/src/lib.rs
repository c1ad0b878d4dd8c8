//! Simulation of a single photon entangling with a movable cavity mirror.
//!
//! A photon enters a Michelson interferometer whose arm A contains a
//! high-finesse cavity closed by a tiny mirror on a mechanical oscillator.
//! Radiation pressure drives the mirror into a superposition of positions;
//! after one mechanical period it disentangles and the photon's interference
//! visibility revives. This crate provides:
//!
//! * [`params`]: SI inputs and the derived coupling `kappa`, roundtrip number
//!   and thermal occupation.
//! * [`closed_form`]: exact branch states and photon coherence for coherent
//!   and thermal mirror states.
//! * [`fock`]: an independent truncated-Fock-space propagator used to check
//!   the closed forms.
//! * [`decoherence`]: the Ohmic-bath decoherence rate and revival attenuation.
//! * [`feasibility`]: experimental requirements and a combined report.
//! * [`montecarlo`]: seeded simulation of detector clicks and fringe fitting.
//!
//! ```
//! use optomirror::closed_form::off_diagonal_thermal;
//! use std::f64::consts::TAU;
//!
//! // The visibility of a thermal mirror revives fully after one period.
//! let od = off_diagonal_thermal(1.0, 2500.0, TAU);
//! assert_eq!(od.visibility(), 1.0);
//! ```

pub mod closed_form;
pub mod decoherence;
pub mod error;
pub mod feasibility;
pub mod fock;
pub mod montecarlo;
pub mod params;

pub use error::{Error, Result};
pub use num_complex::Complex64;

// Code blocks in the guide compile and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/parameters.md")]
    mod parameters {}
    #[doc = include_str!("../../../book/src/dynamics.md")]
    mod dynamics {}
    #[doc = include_str!("../../../book/src/fock_oracle.md")]
    mod fock_oracle {}
    #[doc = include_str!("../../../book/src/decoherence.md")]
    mod decoherence {}
    #[doc = include_str!("../../../book/src/feasibility.md")]
    mod feasibility {}
    #[doc = include_str!("../../../book/src/montecarlo.md")]
    mod montecarlo {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
