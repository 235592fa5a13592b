//! Barrier geometry in lattice units and the bridge from SI inputs.

use serde::{Deserialize, Serialize};

use crate::constants::Constants;
use crate::dispersion::{DimensionlessEnergy, BAND_EDGE};
use crate::error::{Error, Result};

/// `N` identical rectangular barriers of height `υ₀` and width `n` sites,
/// separated by gaps of `m` sites. Single-barrier operations ignore `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierSystem {
    pub upsilon0: f64,
    pub width: u32,
    pub gap: u32,
    pub count: u32,
}

impl BarrierSystem {
    pub fn new(upsilon0: f64, width: u32, gap: u32, count: u32) -> Result<Self> {
        if !(upsilon0 > 0.0 && upsilon0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "barrier height must be positive, got {upsilon0}"
            )));
        }
        if width == 0 || gap == 0 || count == 0 {
            return Err(Error::InvalidParameter(format!(
                "width, gap and count must be at least 1 (got n = {width}, m = {gap}, N = {count})"
            )));
        }
        Ok(Self { upsilon0, width, gap, count })
    }

    pub fn single(upsilon0: f64, width: u32) -> Result<Self> {
        Self::new(upsilon0, width, 1, 1)
    }

    pub fn with_count(self, count: u32) -> Result<Self> {
        Self::new(self.upsilon0, self.width, self.gap, count)
    }

    /// Highest energy the tunneling closed forms accept: `min(υ₀, 2)`.
    pub fn ceiling(&self) -> f64 {
        self.upsilon0.min(BAND_EDGE)
    }
}

/// A barrier specified in SI units, discretised into `n` lattice sites
/// across its width so that `λ = L/n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalScenario {
    pub mass_kg: f64,
    pub u0_ev: f64,
    pub width_m: f64,
    pub n: u32,
    pub constants: Constants,
}

impl PhysicalScenario {
    pub fn new(mass_kg: f64, u0_ev: f64, width_m: f64, n: u32, constants: Constants) -> Result<Self> {
        for (name, v) in [("mass", mass_kg), ("barrier height", u0_ev), ("width", width_m)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        if n == 0 {
            return Err(Error::InvalidParameter("lattice divisor n must be at least 1".into()));
        }
        Ok(Self { mass_kg, u0_ev, width_m, n, constants })
    }

    pub fn electron(u0_ev: f64, width_m: f64, n: u32) -> Result<Self> {
        let c = Constants::default();
        Self::new(c.electron_mass_kg, u0_ev, width_m, n, c)
    }

    /// Electron on a 10 eV, 1.8 Å barrier.
    pub fn reference_electron(n: u32) -> Result<Self> {
        Self::electron(10.0, 1.8e-10, n)
    }

    pub fn with_n(self, n: u32) -> Result<Self> {
        Self::new(self.mass_kg, self.u0_ev, self.width_m, n, self.constants)
    }

    /// `α = 2mL²U₀/ħ²`
    pub fn alpha(&self) -> f64 {
        let hbar = self.constants.hbar_js;
        2.0 * self.mass_kg * self.width_m * self.width_m * self.u0_ev * self.constants.ev_joule
            / (hbar * hbar)
    }

    /// Lattice spacing `λ = L/n` in meters.
    pub fn lattice_spacing_m(&self) -> f64 {
        self.width_m / f64::from(self.n)
    }

    /// Dimensionless barrier height `υ₀ = α/(2n²)`.
    pub fn upsilon0(&self) -> f64 {
        let n = f64::from(self.n);
        self.alpha() / (2.0 * n * n)
    }

    /// Barrier-relative energy `E/U₀` of the lattice band edge, `4n²/α`.
    pub fn epsilon_max_ratio(&self) -> f64 {
        let n = f64::from(self.n);
        4.0 * n * n / self.alpha()
    }

    /// `mλ²/ħ` in seconds: one unit of dimensionless time.
    pub fn time_unit_s(&self) -> f64 {
        let lambda = self.lattice_spacing_m();
        self.mass_kg * lambda * lambda / self.constants.hbar_js
    }

    /// Lattice energy for a barrier-relative energy `ε̂ = E/U₀`.
    pub fn epsilon_of_ratio(&self, epsilon_hat: f64) -> f64 {
        epsilon_hat * self.upsilon0()
    }

    /// Raw `ε = m(L/n)²E/ħ²` for an energy in eV, without band checks.
    pub fn epsilon_of_energy(&self, energy_ev: f64) -> f64 {
        let lambda = self.lattice_spacing_m();
        let hbar = self.constants.hbar_js;
        self.mass_kg * lambda * lambda * energy_ev * self.constants.ev_joule / (hbar * hbar)
    }

    /// Converts an energy in eV to `(ε, υ₀)`. Fails when the energy lies
    /// above the lattice band for this discretisation.
    pub fn to_dimensionless(&self, energy_ev: f64) -> Result<(DimensionlessEnergy, f64)> {
        if !(energy_ev > 0.0 && energy_ev.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "energy must be positive, got {energy_ev} eV"
            )));
        }
        let eps = DimensionlessEnergy::new(self.epsilon_of_energy(energy_ev))?;
        Ok((eps, self.upsilon0()))
    }

    /// Geometry with gaps of `gap` sites and `count` barriers.
    pub fn barrier_system(&self, gap: u32, count: u32) -> Result<BarrierSystem> {
        BarrierSystem::new(self.upsilon0(), self.n, gap, count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::{kappa_of_epsilon, rho_of_epsilon};

    #[test]
    fn reference_alpha_and_heights() {
        let s = PhysicalScenario::reference_electron(2).unwrap();
        // 2 m_e L² U₀ / ħ² with CODATA 2018, evaluated at 50 digits
        assert!((s.alpha() - 8.503_976_935_304_669).abs() < 1e-12);
        assert!((s.alpha() - 8.50).abs() / 8.50 < 5e-3);
        assert!((s.upsilon0() - 1.062_997_116_913_083_7).abs() < 1e-12);
        assert!((s.epsilon_max_ratio() - 1.881_472_647_647_388).abs() < 1e-12);

        let fine = s.with_n(100).unwrap();
        assert!((fine.upsilon0() - 4.251_988_467_652_335e-4).abs() < 1e-16);
        assert!((fine.epsilon_max_ratio() - 4_703.681_619_118_471).abs() < 1e-8);
    }

    #[test]
    fn energy_equal_to_barrier_maps_to_upsilon0() {
        for n in [1, 2, 7, 100] {
            let s = PhysicalScenario::reference_electron(n).unwrap();
            let upsilon0 = s.upsilon0();
            assert!((s.epsilon_of_energy(s.u0_ev) - upsilon0).abs() <= 1e-15 * upsilon0);
        }
        // n = 1 places U₀ above the band, so only the checked path for n ≥ 2
        let s = PhysicalScenario::reference_electron(7).unwrap();
        let (eps, upsilon0) = s.to_dimensionless(s.u0_ev).unwrap();
        assert!((eps.value() - upsilon0).abs() <= 1e-15 * upsilon0);
    }

    #[test]
    fn band_edge_matches_cutoff_ratio() {
        let s = PhysicalScenario::reference_electron(2).unwrap();
        let e_edge = s.epsilon_max_ratio() * s.u0_ev;
        assert!((s.epsilon_of_energy(e_edge) - 2.0).abs() < 1e-14);
        assert!(matches!(s.to_dimensionless(e_edge * 1.001), Err(Error::OutOfBand { .. })));
        assert!(s.to_dimensionless(0.0).is_err());
        assert!(s.to_dimensionless(-1.0).is_err());
    }

    #[test]
    fn cutoff_equals_one_when_alpha_is_four_n_squared() {
        let c = Constants::default();
        let n = 3u32;
        // choose U₀ so that α = 4n²
        let base = PhysicalScenario::new(c.electron_mass_kg, 1.0, 1e-10, n, c).unwrap();
        let u0 = 4.0 * 9.0 / base.alpha();
        let s = PhysicalScenario::new(c.electron_mass_kg, u0, 1e-10, n, c).unwrap();
        assert!((s.epsilon_max_ratio() - 1.0).abs() < 1e-14);
        assert!((s.upsilon0() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(PhysicalScenario::electron(0.0, 1e-10, 2).is_err());
        assert!(PhysicalScenario::electron(1.0, -1e-10, 2).is_err());
        assert!(PhysicalScenario::electron(1.0, 1e-10, 0).is_err());
        assert!(BarrierSystem::new(1.0, 0, 1, 1).is_err());
        assert!(BarrierSystem::new(1.0, 1, 0, 1).is_err());
        assert!(BarrierSystem::new(1.0, 1, 1, 0).is_err());
        assert!(BarrierSystem::new(-1.0, 1, 1, 1).is_err());
    }

    #[test]
    fn lattice_wavenumbers_approach_continuum() {
        // fixed physical E = 3 eV below U₀ = 10 eV
        let energy_ev = 3.0;
        let mut errs = Vec::new();
        for n in [50u32, 100, 200, 400] {
            let s = PhysicalScenario::reference_electron(n).unwrap();
            let hbar = s.constants.hbar_js;
            let e_j = energy_ev * s.constants.ev_joule;
            let k_l = s.width_m * (2.0 * s.mass_kg * e_j).sqrt() / hbar;
            let q_l = s.width_m * (2.0 * s.mass_kg * (s.u0_ev * s.constants.ev_joule - e_j)).sqrt() / hbar;
            let (eps, upsilon0) = s.to_dimensionless(energy_ev).unwrap();
            let nf = f64::from(n);
            let rho_err = (nf * rho_of_epsilon(eps) - k_l).abs();
            let kappa_err = (nf * kappa_of_epsilon(eps, upsilon0).unwrap() - q_l).abs();
            errs.push((rho_err, kappa_err));
        }
        for w in errs.windows(2) {
            // halving λ quarters the error
            let r_rho = w[0].0 / w[1].0;
            let r_kappa = w[0].1 / w[1].1;
            assert!((r_rho - 4.0).abs() < 0.05, "rho ratio {r_rho}");
            assert!((r_kappa - 4.0).abs() < 0.05, "kappa ratio {r_kappa}");
        }
    }
}
