//! Closed-form scattering off one rectangular barrier of `n` sites.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::dispersion::DispersionPair;
use crate::error::{Error, Result};
use crate::grid::EnergyGrid;
use crate::scenario::{BarrierSystem, PhysicalScenario};

/// Observables at one energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatteringResult {
    pub epsilon: f64,
    pub amplitude_t: Complex64,
    /// `|T|²`
    pub coefficient_t: f64,
    /// `|R|²`, present only when a reflection amplitude was solved for.
    pub coefficient_r: Option<f64>,
    pub delta: f64,
    pub tau: f64,
}

fn asymmetry(d: &DispersionPair) -> f64 {
    (d.xi * d.xi - d.sigma * d.sigma) / (2.0 * d.xi * d.sigma)
}

fn check(d: &DispersionPair, n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("barrier width must be at least one site".into()));
    }
    d.check_scattering()
}

/// `T = e^{−iρn} / [cosh κn + i (ξ² − σ²)/(2ξσ) sinh κn]`
pub fn transmission_amplitude(d: &DispersionPair, n: u32) -> Result<Complex64> {
    check(d, n)?;
    let kn = d.kappa * f64::from(n);
    let denom = Complex64::new(kn.cosh(), asymmetry(d) * kn.sinh());
    Ok(Complex64::from_polar(1.0, -d.rho * f64::from(n)) / denom)
}

pub fn transmission_coefficient(d: &DispersionPair, n: u32) -> Result<f64> {
    transmission_amplitude(d, n).map(|t| t.norm_sqr())
}

/// Second-order estimate of `𝒯 − 𝒯^QM` at barrier-relative energy `ε̂`:
///
/// `−(2/3)(α/n²)·[ε̂² − (1 − ε̂)²]/[ε̂(1 − ε̂)]·sinh²(√(α(1 − ε̂)))`
pub fn low_energy_correction(s: &PhysicalScenario, epsilon_hat: f64) -> Result<f64> {
    if !(epsilon_hat > 0.0 && epsilon_hat < 1.0) {
        return Err(Error::SingularInput(format!(
            "low-energy correction needs 0 < E/U0 < 1, got {epsilon_hat}"
        )));
    }
    let alpha = s.alpha();
    let n = f64::from(s.n);
    let e = epsilon_hat;
    let shape = (e * e - (1.0 - e) * (1.0 - e)) / (e * (1.0 - e));
    let sinh = (alpha * (1.0 - e)).sqrt().sinh();
    Ok(-(2.0 / 3.0) * (alpha / (n * n)) * shape * sinh * sinh)
}

/// `δ = −arctan[(ξ² − σ²)/(2ξσ)·tanh κn]`, principal branch.
pub fn phase_delta(d: &DispersionPair, n: u32) -> Result<f64> {
    check(d, n)?;
    Ok(-(asymmetry(d) * (d.kappa * f64::from(n)).tanh()).atan())
}

/// Closed-form `dδ/dε`.
///
/// Numerator `2nσ(ξ² − σ²) + (ξ² + σ²)[(ξ/σ)cos ρ + (σ/ξ)cosh κ]·sinh 2κn`,
/// denominator `(ξ² + σ²)²cosh²κn − (ξ² − σ²)²`. Both are divided by
/// `cosh²κn` so thick barriers do not overflow.
pub fn tunneling_time_closed(d: &DispersionPair, n: u32) -> Result<f64> {
    check(d, n)?;
    let nf = f64::from(n);
    let (s, x) = (d.sigma, d.xi);
    let (s2, x2) = (s * s, x * x);
    let kn = d.kappa * nf;
    let sech2 = 1.0 / (kn.cosh() * kn.cosh());
    let cos_rho = 1.0 - d.epsilon;
    let cosh_kappa = 1.0 + d.upsilon0 - d.epsilon;
    // sinh 2κn / cosh²κn = 2 tanh κn
    let num = 2.0 * nf * s * (x2 - s2) * sech2
        + (x2 + s2) * ((x / s) * cos_rho + (s / x) * cosh_kappa) * 2.0 * kn.tanh();
    let den = (x2 + s2) * (x2 + s2) - (x2 - s2) * (x2 - s2) * sech2;
    debug_assert!(den > 0.0, "denominator vanished at {d:?}");
    Ok(num / den)
}

/// All closed-form observables at one energy; no reflection.
pub fn scatter(d: &DispersionPair, n: u32) -> Result<ScatteringResult> {
    let amplitude_t = transmission_amplitude(d, n)?;
    Ok(ScatteringResult {
        epsilon: d.epsilon,
        amplitude_t,
        coefficient_t: amplitude_t.norm_sqr(),
        coefficient_r: None,
        delta: phase_delta(d, n)?,
        tau: tunneling_time_closed(d, n)?,
    })
}

/// [`scatter`] plus `|R|²` from a direct lattice solve.
pub fn scatter_with_reflection(d: &DispersionPair, n: u32) -> Result<ScatteringResult> {
    let mut r = scatter(d, n)?;
    let sys = BarrierSystem::single(d.upsilon0, n)?;
    let profile = crate::oracle::build_profile(&sys);
    let sol = crate::oracle::solve_scattering(&profile, d.epsilon)?;
    r.coefficient_r = Some(sol.r.norm_sqr());
    Ok(r)
}

/// Evaluates every grid point in parallel. Failures stay attached to their
/// point instead of aborting the sweep.
pub fn sweep_single(sys: &BarrierSystem, grid: &EnergyGrid) -> Vec<Result<ScatteringResult>> {
    grid.points()
        .par_iter()
        .map(|&eps| DispersionPair::new(eps, sys.upsilon0).and_then(|d| scatter(&d, sys.width)))
        .collect()
}
