//! Lattice dispersion relations.
//!
//! A free particle on the lattice obeys `ε = 1 − cos ρ`, so the kinetic
//! spectrum is the open band `(0, 2)`. Inside a barrier of height `υ₀` a
//! tunneling solution decays with `ε − υ₀ = 1 − cosh κ`.

use crate::error::{Error, Result};

/// Closed forms refuse energies closer than this to the band edge `ε = 2`
/// or to the barrier top `ε = υ₀`.
pub const EDGE_MARGIN: f64 = 1e-9;

/// Upper end of the free lattice band.
pub const BAND_EDGE: f64 = 2.0;

/// Energy in lattice units, `ε = mλ²E/ħ²`, restricted to the open band.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DimensionlessEnergy(f64);

impl DimensionlessEnergy {
    pub fn new(epsilon: f64) -> Result<Self> {
        if epsilon > 0.0 && epsilon < BAND_EDGE {
            Ok(Self(epsilon))
        } else {
            Err(Error::OutOfBand { epsilon })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for DimensionlessEnergy {
    type Error = Error;

    fn try_from(epsilon: f64) -> Result<Self> {
        Self::new(epsilon)
    }
}

/// Free lattice wavenumber `ρ = arccos(1 − ε)`, in `(0, π)`.
///
/// Evaluated as `2·asin(√(ε/2))`, which avoids the cancellation in `1 − ε`
/// at small energies.
pub fn rho_of_epsilon(epsilon: DimensionlessEnergy) -> f64 {
    2.0 * (0.5 * epsilon.0).sqrt().asin()
}

/// Decay constant inside the barrier, `κ = arccosh(1 + υ₀ − ε)`.
///
/// Uses `ln(y + √(y² − 1))` with `y − 1 = υ₀ − ε` carried exactly, so the
/// result stays accurate as `ε → υ₀`. `ε = υ₀` gives `κ = 0`.
pub fn kappa_of_epsilon(epsilon: DimensionlessEnergy, upsilon0: f64) -> Result<f64> {
    let eps = epsilon.0;
    let w = upsilon0 - eps;
    if !(w >= 0.0) {
        return Err(Error::UnsupportedRegime { epsilon: eps, upsilon0 });
    }
    Ok((w + (w * (w + 2.0)).sqrt()).ln_1p())
}

/// Wavenumbers and their sines at one energy below a barrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionPair {
    pub epsilon: f64,
    pub upsilon0: f64,
    pub rho: f64,
    pub kappa: f64,
    /// `sin ρ`
    pub sigma: f64,
    /// `sinh κ`
    pub xi: f64,
}

impl DispersionPair {
    pub fn new(epsilon: f64, upsilon0: f64) -> Result<Self> {
        if !(upsilon0 > 0.0 && upsilon0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "barrier height must be positive, got {upsilon0}"
            )));
        }
        let energy = DimensionlessEnergy::new(epsilon)?;
        let rho = rho_of_epsilon(energy);
        let kappa = kappa_of_epsilon(energy, upsilon0)?;
        let w = upsilon0 - epsilon;
        Ok(Self {
            epsilon,
            upsilon0,
            rho,
            kappa,
            // sin²ρ = ε(2 − ε), sinh²κ = w(w + 2)
            sigma: (epsilon * (2.0 - epsilon)).sqrt(),
            xi: (w * (w + 2.0)).sqrt(),
        })
    }

    /// Rejects the pairs on which the scattering closed forms are singular
    /// or numerically meaningless.
    pub(crate) fn check_scattering(&self) -> Result<()> {
        if !(self.sigma > 0.0) {
            return Err(Error::OutOfBand { epsilon: self.epsilon });
        }
        if !(self.xi > 0.0) {
            return Err(Error::UnsupportedRegime { epsilon: self.epsilon, upsilon0: self.upsilon0 });
        }
        if BAND_EDGE - self.epsilon < EDGE_MARGIN {
            return Err(Error::NearEdge { epsilon: self.epsilon, edge: BAND_EDGE, margin: EDGE_MARGIN });
        }
        if self.upsilon0 - self.epsilon < EDGE_MARGIN {
            return Err(Error::NearEdge {
                epsilon: self.epsilon,
                edge: self.upsilon0,
                margin: EDGE_MARGIN,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn energy(e: f64) -> DimensionlessEnergy {
        DimensionlessEnergy::new(e).unwrap()
    }

    #[test]
    fn rho_reference_values() {
        assert!((rho_of_epsilon(energy(1.0)) - FRAC_PI_2).abs() < 1e-15);
        // arccos(0.98) at 50 digits
        assert!((rho_of_epsilon(energy(0.02)) - 0.200_334_842_323_119_59).abs() < 1e-15);
        let near_edge = rho_of_epsilon(energy(2.0 - 1e-12));
        assert!(PI - near_edge < 2e-6 && near_edge < PI);
    }

    #[test]
    fn band_is_open() {
        for bad in [0.0, -0.1, 2.0, 2.5, f64::NAN] {
            assert!(matches!(DimensionlessEnergy::new(bad), Err(Error::OutOfBand { .. })));
        }
    }

    #[test]
    fn kappa_reference_values() {
        let ln_2_plus_sqrt3 = 1.316_957_896_924_816_7;
        assert_eq!(kappa_of_epsilon(energy(0.7), 0.7).unwrap(), 0.0);
        assert!((kappa_of_epsilon(energy(0.5), 1.5).unwrap() - ln_2_plus_sqrt3).abs() < 1e-15);
        let pair = DispersionPair::new(1.0, 2.0).unwrap();
        assert!((pair.kappa - ln_2_plus_sqrt3).abs() < 1e-15);
        assert!((pair.xi - 3f64.sqrt()).abs() < 1e-15);
        assert!((pair.sigma - 1.0).abs() < 1e-15);
    }

    #[test]
    fn above_barrier_is_rejected() {
        assert!(matches!(
            kappa_of_epsilon(energy(1.2), 1.0),
            Err(Error::UnsupportedRegime { .. })
        ));
        let at_top = DispersionPair::new(0.5, 0.5).unwrap();
        assert!(matches!(at_top.check_scattering(), Err(Error::UnsupportedRegime { .. })));
        let close = DispersionPair::new(0.5 - 1e-11, 0.5).unwrap();
        assert!(matches!(close.check_scattering(), Err(Error::NearEdge { .. })));
        let edge = DispersionPair::new(2.0 - 1e-11, 3.0).unwrap();
        assert!(matches!(edge.check_scattering(), Err(Error::NearEdge { .. })));
    }

    proptest! {
        #[test]
        fn rho_round_trip(eps in 1e-12f64..(2.0 - 1e-12)) {
            let rho = rho_of_epsilon(energy(eps));
            prop_assert!(rho > 0.0 && rho < PI);
            prop_assert!((1.0 - rho.cos() - eps).abs() <= 1e-14);
        }

        #[test]
        fn rho_is_monotone(a in 1e-9f64..1.999, b in 1e-9f64..1.999) {
            prop_assume!(a < b);
            prop_assert!(rho_of_epsilon(energy(a)) < rho_of_epsilon(energy(b)));
        }

        #[test]
        fn kappa_round_trip(upsilon0 in 1e-4f64..6.0, frac in 1e-6f64..1.0) {
            let eps = (upsilon0 * frac).min(1.999);
            let kappa = kappa_of_epsilon(energy(eps), upsilon0).unwrap();
            prop_assert!(kappa >= 0.0);
            prop_assert!((1.0 - kappa.cosh() - (eps - upsilon0)).abs() <= 1e-13 * (1.0 + upsilon0));
        }

        #[test]
        fn kappa_round_trip_near_top(upsilon0 in 0.01f64..1.9, gap in 1e-14f64..1e-8) {
            let eps = upsilon0 - gap;
            let kappa = kappa_of_epsilon(energy(eps), upsilon0).unwrap();
            prop_assert!((1.0 - kappa.cosh() - (eps - upsilon0)).abs() <= 1e-13);
            let pair = DispersionPair::new(eps, upsilon0).unwrap();
            prop_assert!((pair.xi - kappa.sinh()).abs() <= 1e-13);
        }

        #[test]
        fn sines_match_direct_evaluation(upsilon0 in 0.01f64..5.0, frac in 0.001f64..0.999) {
            let eps = (upsilon0 * frac).min(1.99);
            let p = DispersionPair::new(eps, upsilon0).unwrap();
            prop_assert!(p.sigma > 0.0 && p.xi > 0.0);
            prop_assert!((p.sigma - p.rho.sin()).abs() <= 1e-14);
            prop_assert!((p.xi - p.kappa.sinh()).abs() <= 1e-13 * (1.0 + p.xi));
        }
    }
}
