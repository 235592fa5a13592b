//! Direct solution of the lattice Schrödinger equation
//! `ψ_{μ+1} + ψ_{μ−1} = 2[1 − (ε − υ_μ)]ψ_μ` for an arbitrary potential on
//! sites `0..=W`, with an incident plane wave from the left.
//!
//! The unknowns `(R, ψ₀, …, ψ_W, T)` satisfy a tridiagonal system, solved
//! by Gaussian elimination with partial pivoting in `O(W)`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::dispersion::{rho_of_epsilon, DimensionlessEnergy};
use crate::error::{Error, Result};
use crate::grid::EnergyGrid;
use crate::multi::SiteCounting;
use crate::scenario::BarrierSystem;

/// Potential `υ_μ` on sites `0..=W`; zero everywhere else.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialProfile {
    values: Vec<f64>,
}

impl PotentialProfile {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("profile needs at least one site".into()));
        }
        if let Some(bad) = values.iter().find(|v| !(**v >= 0.0 && v.is_finite())) {
            return Err(Error::InvalidParameter(format!("potential values must be finite and non-negative, got {bad}")));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Index of the last site, `W`.
    pub fn support_width(&self) -> usize {
        self.values.len() - 1
    }

    pub fn mirrored(&self) -> Self {
        Self { values: self.values.iter().rev().copied().collect() }
    }
}

/// Height assigned to the two boundary sites of each barrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EndpointConvention {
    /// `υ₀/2` on the boundary sites, `υ₀` strictly inside. Reproduces the
    /// closed-form single-barrier amplitude exactly.
    #[default]
    HalfHeight,
    /// `υ₀` on every site `0..=n`; kept as a negative control.
    FullHeight,
}

pub fn build_profile(sys: &BarrierSystem) -> PotentialProfile {
    build_profile_with(sys, EndpointConvention::default(), SiteCounting::default())
}

/// Lays out `N` barriers whose first sites are `counting.period(n, m)`
/// apart. Blocks that touch share their boundary site, where the two
/// contributions add.
pub fn build_profile_with(
    sys: &BarrierSystem,
    endpoint: EndpointConvention,
    counting: SiteCounting,
) -> PotentialProfile {
    let n = sys.width as usize;
    let period = counting.period(sys.width, sys.gap) as usize;
    let last = (sys.count as usize - 1) * period + n;
    let mut values = vec![0.0; last + 1];
    let edge = match endpoint {
        EndpointConvention::HalfHeight => 0.5 * sys.upsilon0,
        EndpointConvention::FullHeight => sys.upsilon0,
    };
    for block in 0..sys.count as usize {
        let start = block * period;
        for (offset, v) in values[start..=start + n].iter_mut().enumerate() {
            *v += if offset == 0 || offset == n { edge } else { sys.upsilon0 };
        }
    }
    PotentialProfile { values }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSolution {
    pub epsilon: f64,
    pub rho: f64,
    /// Reflected amplitude: `ψ_μ = e^{iρμ} + R e^{−iρμ}` for `μ ≤ 0`.
    pub r: Complex64,
    /// Transmitted amplitude: `ψ_μ = T e^{iρμ}` for `μ ≥ W`.
    pub t: Complex64,
    pub psi: Vec<Complex64>,
    /// Largest defect of the difference equation over sites `0..=W`,
    /// relative to `max |ψ|`.
    pub residual: f64,
}

impl OracleSolution {
    pub fn transmission(&self) -> f64 {
        self.t.norm_sqr()
    }

    pub fn reflection(&self) -> f64 {
        self.r.norm_sqr()
    }

    /// `||R|² + |T|² − 1|`
    pub fn unitarity_defect(&self) -> f64 {
        (self.reflection() + self.transmission() - 1.0).abs()
    }
}

/// Solves a tridiagonal system in place. `sub[i]` couples row `i + 1` to
/// unknown `i`, `sup[i]` couples row `i` to unknown `i + 1`. On return `rhs`
/// holds the solution. The ratio of the largest to the smallest pivot is
/// returned as a condition indicator, as the error when a pivot vanishes.
fn solve_tridiagonal(
    sub: &mut [Complex64],
    diag: &mut [Complex64],
    sup: &mut [Complex64],
    rhs: &mut [Complex64],
) -> std::result::Result<f64, f64> {
    let size = diag.len();
    let zero = Complex64::new(0.0, 0.0);
    // after elimination `sub[k]` holds the fill-in on the second superdiagonal
    for k in 0..size - 1 {
        if sub[k] == zero {
            if diag[k] == zero {
                return Err(f64::INFINITY);
            }
        } else if diag[k].l1_norm() >= sub[k].l1_norm() {
            let mult = sub[k] / diag[k];
            diag[k + 1] -= mult * sup[k];
            rhs[k + 1] -= mult * rhs[k];
            sub[k] = zero;
        } else {
            let mult = diag[k] / sub[k];
            diag[k] = sub[k];
            let temp = diag[k + 1];
            diag[k + 1] = sup[k] - mult * temp;
            if k + 2 < size {
                sub[k] = sup[k + 1];
                sup[k + 1] = -mult * sub[k];
            } else {
                sub[k] = zero;
            }
            sup[k] = temp;
            rhs.swap(k, k + 1);
            rhs[k + 1] -= mult * rhs[k];
        }
    }
    let (lo, hi) = diag.iter().map(|d| d.norm()).fold((f64::INFINITY, 0.0f64), |(lo, hi), d| (lo.min(d), hi.max(d)));
    let condition = hi / lo;
    if lo == 0.0 || !condition.is_finite() {
        return Err(condition);
    }
    let last = size - 1;
    rhs[last] /= diag[last];
    if size > 1 {
        rhs[last - 1] = (rhs[last - 1] - sup[last - 1] * rhs[last]) / diag[last - 1];
    }
    for k in (0..size.saturating_sub(2)).rev() {
        rhs[k] = (rhs[k] - sup[k] * rhs[k + 1] - sub[k] * rhs[k + 2]) / diag[k];
    }
    Ok(condition)
}

/// The scattering system as `(sub, diag, sup, rhs)` over unknowns
/// `[R, ψ₀, …, ψ_W, T]`.
type Tridiagonal = (Vec<Complex64>, Vec<Complex64>, Vec<Complex64>, Vec<Complex64>);

fn assemble(profile: &PotentialProfile, epsilon: f64, rho: f64) -> Tridiagonal {
    let w = profile.support_width();
    let size = w + 3;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut sub = vec![one; size - 1];
    let mut diag = vec![zero; size];
    let mut sup = vec![one; size - 1];
    let mut rhs = vec![zero; size];

    // ψ₀ − R = 1
    diag[0] = -one;
    rhs[0] = one;
    for (mu, &v) in profile.values.iter().enumerate() {
        diag[mu + 1] = Complex64::new(-2.0 * (1.0 - epsilon + v), 0.0);
    }
    // ψ_{−1} = e^{−iρ} + R e^{iρ}
    sub[0] = Complex64::from_polar(1.0, rho);
    rhs[1] = -Complex64::from_polar(1.0, -rho);
    // ψ_{W+1} = T e^{iρ(W+1)}
    sup[w + 1] = Complex64::from_polar(1.0, rho * (w as f64 + 1.0));
    // ψ_W − e^{iρW} T = 0
    diag[w + 2] = -Complex64::from_polar(1.0, rho * w as f64);
    (sub, diag, sup, rhs)
}

/// Difference-equation defect of a candidate solution, relative to `max |ψ|`.
fn residual(profile: &PotentialProfile, epsilon: f64, rho: f64, r: Complex64, t: Complex64, psi: &[Complex64]) -> f64 {
    let w = psi.len() - 1;
    let at = |mu: isize| -> Complex64 {
        if mu < 0 {
            Complex64::from_polar(1.0, rho * mu as f64) + r * Complex64::from_polar(1.0, -rho * mu as f64)
        } else if mu as usize > w {
            t * Complex64::from_polar(1.0, rho * mu as f64)
        } else {
            psi[mu as usize]
        }
    };
    let scale = psi.iter().map(|p| p.norm()).fold(1.0f64, f64::max);
    let worst = (0..=w as isize)
        .map(|mu| {
            let c = 2.0 * (1.0 - epsilon + profile.values[mu as usize]);
            (at(mu + 1) + at(mu - 1) - at(mu) * c).norm()
        })
        .fold(0.0f64, f64::max);
    worst / scale
}

/// Reflection and transmission for any energy inside the band. The
/// potential may lie above or below the energy anywhere.
pub fn solve_scattering(profile: &PotentialProfile, epsilon: f64) -> Result<OracleSolution> {
    let rho = rho_of_epsilon(DimensionlessEnergy::new(epsilon)?);
    let (mut sub, mut diag, mut sup, mut x) = assemble(profile, epsilon, rho);
    solve_tridiagonal(&mut sub, &mut diag, &mut sup, &mut x)
        .map_err(|condition| Error::SingularSystem { epsilon, condition })?;
    let w = profile.support_width();
    let r = x[0];
    let t = x[w + 2];
    let psi = x[1..=w + 1].to_vec();
    let residual = residual(profile, epsilon, rho, r, t, &psi);
    Ok(OracleSolution { epsilon, rho, r, t, psi, residual })
}

/// Solves every grid energy in parallel, preserving order.
pub fn solve_sweep(profile: &PotentialProfile, grid: &EnergyGrid) -> Vec<Result<OracleSolution>> {
    grid.points().par_iter().map(|&eps| solve_scattering(profile, eps)).collect()
}
