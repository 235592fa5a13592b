//! Continuum reference curves: the `λ → 0` limit of the lattice formulas.
//!
//! Wavenumbers are measured in units of `1/L`: `kL = √(αε̂)` outside,
//! `κL = √(α(1 − ε̂))` inside, with `ε̂ = E/U₀`. Times are reported in the
//! lattice time unit `mλ²/ħ` of the scenario, so they overlay directly on
//! the lattice curves.

use serde::Serialize;

use crate::derivative::{phase_time_in, TimeEstimate};
use crate::error::{Error, Result};
use crate::multi::{CellParameters, Composition};
use crate::scenario::{BarrierSystem, PhysicalScenario};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContinuumDispersion {
    /// `kL = √(αε̂)`
    pub k_l: f64,
    /// `κL = √(α(1 − ε̂))`
    pub kappa_l: f64,
}

impl ContinuumDispersion {
    pub fn new(alpha: f64, epsilon_hat: f64) -> Result<Self> {
        check_ratio(epsilon_hat)?;
        Ok(Self { k_l: (alpha * epsilon_hat).sqrt(), kappa_l: (alpha * (1.0 - epsilon_hat)).sqrt() })
    }

    /// Cell with one barrier of width `L` and a free stretch of `L + l`
    /// between successive barrier starts.
    pub fn cell(&self, width: u32, gap: u32) -> CellParameters {
        CellParameters {
            outer: self.k_l,
            inner: self.kappa_l,
            traversal: self.k_l,
            decay: self.kappa_l,
            period_phase: self.k_l * f64::from(width + gap) / f64::from(width),
        }
    }
}

fn check_ratio(epsilon_hat: f64) -> Result<()> {
    if epsilon_hat > 0.0 && epsilon_hat < 1.0 {
        Ok(())
    } else {
        Err(Error::SingularInput(format!("continuum tunneling needs 0 < E/U0 < 1, got {epsilon_hat}")))
    }
}

/// `𝒯^QM = 1/[1 + sinh²(√(α(1 − ε̂)))/(4ε̂(1 − ε̂))]`
pub fn qm_transmission(s: &PhysicalScenario, epsilon_hat: f64) -> Result<f64> {
    check_ratio(epsilon_hat)?;
    let sinh = (s.alpha() * (1.0 - epsilon_hat)).sqrt().sinh();
    Ok(1.0 / (1.0 + sinh * sinh / (4.0 * epsilon_hat * (1.0 - epsilon_hat))))
}

/// `δ^QM = −arctan[((κL)² − (kL)²)/(2kLκL)·tanh κL]`
pub fn qm_phase(s: &PhysicalScenario, epsilon_hat: f64) -> Result<f64> {
    let c = ContinuumDispersion::new(s.alpha(), epsilon_hat)?;
    let (k, q) = (c.k_l, c.kappa_l);
    Ok(-((q * q - k * k) / (2.0 * k * q) * q.tanh()).atan())
}

/// `dδ/dε` in lattice units from a phase given as a function of `ε̂`.
fn time_from_ratio_phase(s: &PhysicalScenario, phase: impl Fn(f64) -> f64, epsilon_hat: f64) -> TimeEstimate {
    // ε = ε̂·α/(2n²)
    let n = f64::from(s.n);
    let scale = 2.0 * n * n / s.alpha();
    let est = phase_time_in(phase, epsilon_hat, 0.0, 1.0);
    TimeEstimate { tau: est.tau * scale, error: est.error * scale, refinements: est.refinements }
}

/// Phase and numerical phase time of one continuum barrier.
pub fn qm_phase_and_time(s: &PhysicalScenario, epsilon_hat: f64) -> Result<(f64, TimeEstimate)> {
    let delta = qm_phase(s, epsilon_hat)?;
    let time = time_from_ratio_phase(s, |e| qm_phase(s, e).unwrap_or(f64::NAN), epsilon_hat);
    Ok((delta, time))
}

fn qm_composition(s: &PhysicalScenario, epsilon_hat: f64, sys: &BarrierSystem) -> Result<Composition> {
    let c = ContinuumDispersion::new(s.alpha(), epsilon_hat)?;
    Composition::new(&c.cell(sys.width, sys.gap), sys.count)
}

/// `(𝒯, δ)` of `N` continuum barriers; the phase is principal-valued.
pub fn qm_multibarrier(s: &PhysicalScenario, epsilon_hat: f64, sys: &BarrierSystem) -> Result<(f64, f64)> {
    let comp = qm_composition(s, epsilon_hat, sys)?;
    Ok((comp.transmission(), comp.phase()))
}

/// Phase time of `N` continuum barriers in lattice units.
pub fn qm_multibarrier_time(s: &PhysicalScenario, epsilon_hat: f64, sys: &BarrierSystem) -> Result<TimeEstimate> {
    check_ratio(epsilon_hat)?;
    let phase = |e: f64| qm_composition(s, e, sys).map(|c| c.phase()).unwrap_or(f64::NAN);
    Ok(time_from_ratio_phase(s, phase, epsilon_hat))
}
