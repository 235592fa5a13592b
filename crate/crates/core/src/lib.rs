//! Scattering of a particle on a one-dimensional lattice of spacing `λ` by
//! rectangular barriers: transmission, phase shift and phase time for one
//! barrier and for `N` identical barriers, continuum reference curves, and
//! a direct lattice solver that checks every closed form.
//!
//! Energies are dimensionless, `ε = mλ²E/ħ²`, with the free dispersion
//! `ε = 1 − cos ρ`; barrier heights `υ₀` use the same scale.

// `!(x > 0.0)` is used deliberately so that NaN inputs are rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// reference values in tests keep every digit of their extended-precision source
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod baseline;
pub mod chebyshev;
pub mod cli;
pub mod constants;
pub mod derivative;
pub mod dispersion;
pub mod error;
pub mod grid;
pub mod multi;
pub mod oracle;
pub mod output;
pub mod scenario;
pub mod single;
pub mod sweep;
pub mod transfer;
pub mod verify;

pub use constants::Constants;
pub use dispersion::{DimensionlessEnergy, DispersionPair};
pub use error::{Error, Result};
pub use grid::EnergyGrid;
pub use multi::SiteCounting;
pub use oracle::{build_profile, solve_scattering, OracleSolution, PotentialProfile};
pub use scenario::{BarrierSystem, PhysicalScenario};
pub use transfer::TransferMatrix;
