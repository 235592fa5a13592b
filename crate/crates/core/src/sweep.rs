//! Lattice and continuum curves side by side on a grid of barrier-relative
//! energies `ε̂ = E/U₀`.

use rayon::prelude::*;
use serde::Serialize;

use crate::baseline;
use crate::derivative::unwrap_phase;
use crate::dispersion::DispersionPair;
use crate::error::Result;
use crate::multi;
use crate::scenario::{BarrierSystem, PhysicalScenario};
use crate::single;

/// Relative distance kept from the energy ceiling on lattice curves.
pub const CLIP_MARGIN: f64 = 1e-6;

/// One scenario with `N` barriers separated by `gap` sites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSpec {
    pub scenario: PhysicalScenario,
    pub gap: u32,
    pub count: u32,
}

impl CurveSpec {
    pub fn new(scenario: PhysicalScenario, gap: u32, count: u32) -> Result<Self> {
        scenario.barrier_system(gap, count)?;
        Ok(Self { scenario, gap, count })
    }

    pub fn system(&self) -> BarrierSystem {
        self.scenario.barrier_system(self.gap, self.count).expect("validated on construction")
    }

    /// Largest `ε̂` evaluated on lattice curves: `min(υ₀, 2)/υ₀·(1 − 10⁻⁶)`.
    pub fn polymer_limit(&self) -> f64 {
        let u0 = self.scenario.upsilon0();
        u0.min(2.0) / u0 * (1.0 - CLIP_MARGIN)
    }
}

/// Values at one `ε̂`; entries that could not be evaluated are NaN.
/// Times are in units of `mλ²/ħ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRow {
    pub epsilon_hat: f64,
    pub epsilon: f64,
    pub t_poly: f64,
    pub t_qm: f64,
    pub delta_poly: f64,
    pub delta_qm: f64,
    pub tau_poly: f64,
    pub tau_qm: f64,
}

fn or_nan<T>(r: Result<T>, what: &str, epsilon_hat: f64) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e) => {
            log::debug!("{what} at E/U0 = {epsilon_hat}: {e}");
            None
        }
    }
}

fn polymer_point(spec: &CurveSpec, sys: &BarrierSystem, epsilon_hat: f64) -> (f64, f64, f64) {
    let eps = spec.scenario.epsilon_of_ratio(epsilon_hat);
    let Some(d) = or_nan(DispersionPair::new(eps, sys.upsilon0), "lattice curve", epsilon_hat) else {
        return (f64::NAN, f64::NAN, f64::NAN);
    };
    if sys.count == 1 {
        match or_nan(single::scatter(&d, sys.width), "lattice curve", epsilon_hat) {
            Some(r) => (r.coefficient_t, r.delta, r.tau),
            None => (f64::NAN, f64::NAN, f64::NAN),
        }
    } else {
        let t = or_nan(multi::transmission_n(&d, sys), "lattice curve", epsilon_hat).unwrap_or(f64::NAN);
        let delta = or_nan(multi::phase_n(&d, sys), "lattice phase", epsilon_hat).unwrap_or(f64::NAN);
        let tau = or_nan(multi::tunneling_time_n_at(sys, eps), "lattice time", epsilon_hat).map_or(f64::NAN, |t| t.tau);
        (t, delta, tau)
    }
}

fn continuum_point(spec: &CurveSpec, sys: &BarrierSystem, epsilon_hat: f64) -> (f64, f64, f64) {
    let s = &spec.scenario;
    if sys.count == 1 {
        let t = or_nan(baseline::qm_transmission(s, epsilon_hat), "continuum curve", epsilon_hat).unwrap_or(f64::NAN);
        match or_nan(baseline::qm_phase_and_time(s, epsilon_hat), "continuum phase", epsilon_hat) {
            Some((delta, time)) => (t, delta, time.tau),
            None => (t, f64::NAN, f64::NAN),
        }
    } else {
        let (t, delta) = or_nan(baseline::qm_multibarrier(s, epsilon_hat, sys), "continuum curve", epsilon_hat)
            .unwrap_or((f64::NAN, f64::NAN));
        let tau = or_nan(baseline::qm_multibarrier_time(s, epsilon_hat, sys), "continuum time", epsilon_hat)
            .map_or(f64::NAN, |t| t.tau);
        (t, delta, tau)
    }
}

/// Evaluates both theories at every `ε̂` in parallel and unwraps both phase
/// columns along the grid. Lattice values above [`CurveSpec::polymer_limit`]
/// are left NaN.
pub fn curves(spec: &CurveSpec, ratios: &[f64]) -> Vec<CurveRow> {
    let sys = spec.system();
    let limit = spec.polymer_limit();
    let mut rows: Vec<CurveRow> = ratios
        .par_iter()
        .map(|&epsilon_hat| {
            let (t_poly, delta_poly, tau_poly) = if epsilon_hat <= limit {
                polymer_point(spec, &sys, epsilon_hat)
            } else {
                (f64::NAN, f64::NAN, f64::NAN)
            };
            let (t_qm, delta_qm, tau_qm) = continuum_point(spec, &sys, epsilon_hat);
            CurveRow {
                epsilon_hat,
                epsilon: spec.scenario.epsilon_of_ratio(epsilon_hat),
                t_poly,
                t_qm,
                delta_poly,
                delta_qm,
                tau_poly,
                tau_qm,
            }
        })
        .collect();
    let poly = unwrap_phase(&rows.iter().map(|r| r.delta_poly).collect::<Vec<_>>());
    let qm = unwrap_phase(&rows.iter().map(|r| r.delta_qm).collect::<Vec<_>>());
    for ((row, p), q) in rows.iter_mut().zip(poly).zip(qm) {
        row.delta_poly = p;
        row.delta_qm = q;
    }
    rows
}
