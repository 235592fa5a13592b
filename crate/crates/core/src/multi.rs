//! `N` identical barriers by transfer-matrix composition.
//!
//! A single barrier gives `T⁽¹⁾`; the free stretch to the next barrier is the
//! diagonal phase matrix `F = diag(e^{iφ}, e^{−iφ})` with `φ = ρ·period`.
//! With `G = T⁽¹⁾F` the whole stack is `T⁽ᴺ⁾ = (F*)ᴺGᴺ`, and `Gᴺ` follows
//! from Chebyshev polynomials in `g = Re G₁₁`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::chebyshev::{chebyshev_u, ChebyshevEval};
use crate::derivative::{phase_time_in, unwrap_phase, TimeEstimate};
use crate::dispersion::DispersionPair;
use crate::error::{Error, Result};
use crate::grid::EnergyGrid;
use crate::scenario::BarrierSystem;
use crate::transfer::TransferMatrix;

/// How the gap `m` between barriers translates into the lattice period
/// (distance from the first site of one barrier to the first site of the
/// next).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SiteCounting {
    /// Period `n + m − 1`: the `m` gap sites include both barrier edge sites.
    /// This is the phase used in the standard composition formula.
    #[default]
    GapIncludesEdgeSites,
    /// Period `n + m`: `m` bonds separate the edge sites.
    GapInBonds,
}

impl SiteCounting {
    pub const ALL: [SiteCounting; 2] = [SiteCounting::GapIncludesEdgeSites, SiteCounting::GapInBonds];

    pub fn period(self, width: u32, gap: u32) -> u32 {
        match self {
            SiteCounting::GapIncludesEdgeSites => width + gap - 1,
            SiteCounting::GapInBonds => width + gap,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SiteCounting::GapIncludesEdgeSites => "gap_includes_edge_sites (period n+m-1)",
            SiteCounting::GapInBonds => "gap_in_bonds (period n+m)",
        }
    }
}

/// Everything that fixes one barrier's transfer matrix and the free phase
/// accumulated over one period. Lattice and continuum cells differ only in
/// what is plugged in here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CellParameters {
    /// Outside wavenumber factor: `sin ρ` on the lattice, `kL` in the continuum.
    pub outer: f64,
    /// Inside decay factor: `sinh κ` or `κL`.
    pub inner: f64,
    /// Free phase across the barrier width: `ρn` or `kL`.
    pub traversal: f64,
    /// Decay across the barrier width: `κn` or `κL`.
    pub decay: f64,
    /// Free phase over one period.
    pub period_phase: f64,
}

impl CellParameters {
    pub fn polymer(d: &DispersionPair, width: u32, period: u32) -> Self {
        Self {
            outer: d.sigma,
            inner: d.xi,
            traversal: d.rho * f64::from(width),
            decay: d.kappa * f64::from(width),
            period_phase: d.rho * f64::from(period),
        }
    }

    /// `T₁₁ = [cosh κn + i(σ² − ξ²)/(2σξ) sinh κn] e^{−iρn}`,
    /// `T₁₂ = −i(σ² + ξ²)/(2σξ) sinh κn e^{−iρn}`.
    pub fn barrier_matrix(&self) -> TransferMatrix {
        let (s, x) = (self.outer, self.inner);
        let minus = (s * s - x * x) / (2.0 * s * x);
        let plus = (s * s + x * x) / (2.0 * s * x);
        let phase = Complex64::from_polar(1.0, -self.traversal);
        let t11 = Complex64::new(self.decay.cosh(), minus * self.decay.sinh()) * phase;
        let t12 = Complex64::new(0.0, -plus * self.decay.sinh()) * phase;
        TransferMatrix::conjugate_pair(t11, t12)
    }

    pub fn free_matrix(&self) -> TransferMatrix {
        TransferMatrix::diagonal(
            Complex64::from_polar(1.0, self.period_phase),
            Complex64::from_polar(1.0, -self.period_phase),
        )
    }
}

/// A stack of identical cells in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Composition {
    pub single: TransferMatrix,
    /// `G = T⁽¹⁾F`
    pub cell: TransferMatrix,
    /// `F₂₂ = e^{−iφ}`
    pub f22: Complex64,
    pub cheb: ChebyshevEval,
    pub period_phase: f64,
}

impl Composition {
    pub fn new(params: &CellParameters, count: u32) -> Result<Self> {
        let single = params.barrier_matrix();
        let cell = single * params.free_matrix();
        let cheb = chebyshev_u(cell.t11.re, count)?;
        Ok(Self {
            single,
            cell,
            f22: Complex64::from_polar(1.0, -params.period_phase),
            cheb,
            period_phase: params.period_phase,
        })
    }

    pub fn count(&self) -> u32 {
        self.cheb.count
    }

    /// `T⁽ᴺ⁾₁₁ = F₂₂ᴺ[G₁₁U_{N−1} − U_{N−2}]`, `T⁽ᴺ⁾₁₂ = F₂₂ᴺG₁₂U_{N−1}`.
    pub fn matrix(&self) -> TransferMatrix {
        let fn22 = Complex64::from_polar(1.0, -f64::from(self.count()) * self.period_phase);
        let (u1, u2) = (self.cheb.u_nminus1, self.cheb.u_nminus2);
        TransferMatrix::conjugate_pair(
            fn22 * (self.cell.t11 * u1 - u2),
            fn22 * self.cell.t12 * u1,
        )
    }

    /// `(F*)ᴺGᴺ` by explicit multiplication.
    pub fn matrix_by_power(&self) -> TransferMatrix {
        let f_star = TransferMatrix::diagonal(self.f22, self.f22.conj());
        f_star.power(self.count()) * self.cell.power(self.count())
    }

    /// `𝒯_N = 1/(1 + |T⁽¹⁾₁₂|²U²_{N−1})`
    pub fn transmission(&self) -> f64 {
        let u = self.cheb.u_nminus1;
        1.0 / (1.0 + self.single.t12.norm_sqr() * u * u)
    }

    /// Phase of the transmitted wave at the end of the last period relative
    /// to the incident wave at the first site: `arg(G₁₁U_{N−1} − U_{N−2})`.
    ///
    /// Evaluated as a quadrant-aware arctangent of the product form, so the
    /// zeros of `U_{N−1}` need no special treatment. Defined modulo 2π.
    pub fn phase(&self) -> f64 {
        (self.cell.t11 * self.cheb.u_nminus1 - self.cheb.u_nminus2).arg()
    }
}

fn composition(d: &DispersionPair, sys: &BarrierSystem, counting: SiteCounting) -> Result<Composition> {
    d.check_scattering()?;
    let period = counting.period(sys.width, sys.gap);
    Composition::new(&CellParameters::polymer(d, sys.width, period), sys.count)
}

pub fn transfer_matrix_single(d: &DispersionPair, width: u32) -> Result<TransferMatrix> {
    d.check_scattering()?;
    if width == 0 {
        return Err(Error::InvalidParameter("barrier width must be at least one site".into()));
    }
    Ok(CellParameters::polymer(d, width, width).barrier_matrix())
}

/// `G = T⁽¹⁾F` and `F₂₂` for the default site counting.
pub fn cell_matrix(d: &DispersionPair, sys: &BarrierSystem) -> Result<(TransferMatrix, Complex64)> {
    cell_matrix_with(d, sys, SiteCounting::default())
}

pub fn cell_matrix_with(
    d: &DispersionPair,
    sys: &BarrierSystem,
    counting: SiteCounting,
) -> Result<(TransferMatrix, Complex64)> {
    let c = composition(d, sys, counting)?;
    Ok((c.cell, c.f22))
}

pub fn transfer_matrix_n(d: &DispersionPair, sys: &BarrierSystem) -> Result<TransferMatrix> {
    transfer_matrix_n_with(d, sys, SiteCounting::default())
}

pub fn transfer_matrix_n_with(
    d: &DispersionPair,
    sys: &BarrierSystem,
    counting: SiteCounting,
) -> Result<TransferMatrix> {
    composition(d, sys, counting).map(|c| c.matrix())
}

pub fn transmission_n(d: &DispersionPair, sys: &BarrierSystem) -> Result<f64> {
    transmission_n_with(d, sys, SiteCounting::default())
}

pub fn transmission_n_with(d: &DispersionPair, sys: &BarrierSystem, counting: SiteCounting) -> Result<f64> {
    composition(d, sys, counting).map(|c| c.transmission())
}

/// Principal-value phase; see [`Composition::phase`].
pub fn phase_n(d: &DispersionPair, sys: &BarrierSystem) -> Result<f64> {
    composition(d, sys, SiteCounting::default()).map(|c| c.phase())
}

/// Phase along a grid with π jumps removed. Failed points keep their error
/// and do not break continuity of the rest.
pub fn phase_n_sweep(sys: &BarrierSystem, grid: &EnergyGrid) -> Vec<Result<f64>> {
    let raw: Vec<Result<f64>> = grid
        .points()
        .par_iter()
        .map(|&eps| DispersionPair::new(eps, sys.upsilon0).and_then(|d| phase_n(&d, sys)))
        .collect();
    let finite: Vec<f64> = raw.iter().filter_map(|r| r.as_ref().ok().copied()).collect();
    let mut unwrapped = unwrap_phase(&finite).into_iter();
    raw.into_iter().map(|r| r.map(|_| unwrapped.next().expect("one per success"))).collect()
}

/// Dimensionless tunneling time `dδ/dε` at one energy.
pub fn tunneling_time_n_at(sys: &BarrierSystem, epsilon: f64) -> Result<TimeEstimate> {
    let d = DispersionPair::new(epsilon, sys.upsilon0)?;
    d.check_scattering()?;
    let phase = |e: f64| {
        DispersionPair::new(e, sys.upsilon0)
            .and_then(|d| phase_n(&d, sys))
            .unwrap_or(f64::NAN)
    };
    Ok(phase_time_in(phase, epsilon, 0.0, sys.ceiling()))
}

/// `τ(ε) = dδ/dε` on every grid point, evaluated in parallel.
pub fn tunneling_time_n(sys: &BarrierSystem, grid: &EnergyGrid) -> Vec<Result<TimeEstimate>> {
    grid.points().par_iter().map(|&eps| tunneling_time_n_at(sys, eps)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::single;
    use proptest::prelude::*;

    fn pair(eps: f64, upsilon0: f64) -> DispersionPair {
        DispersionPair::new(eps, upsilon0).unwrap()
    }

    #[test]
    fn hand_value_off_diagonal() {
        let t = transfer_matrix_single(&pair(1.0, 2.0), 1).unwrap();
        // |T₁₂|² = 1/𝒯 − 1 with 𝒯 = 1/5
        assert!((t.t12.norm_sqr() - 4.0).abs() < 1e-14);
        assert!((t.transmission() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn single_count_reduces_to_single_barrier() {
        for (eps, u0, n, m) in [(0.3, 1.0, 2, 3), (0.05, 0.5, 5, 1), (1.2, 2.5, 1, 4)] {
            let d = pair(eps, u0);
            let sys = BarrierSystem::new(u0, n, m, 1).unwrap();
            let t_single = single::transmission_coefficient(&d, n).unwrap();
            assert!((transmission_n(&d, &sys).unwrap() - t_single).abs() < 1e-13);
            // (F*)T⁽¹⁾F keeps the diagonal and rotates the off-diagonal phase
            let m_n = transfer_matrix_n(&d, &sys).unwrap();
            let m_1 = transfer_matrix_single(&d, n).unwrap();
            assert!((m_n.t11 - m_1.t11).norm() < 1e-13 * m_1.t11.norm());
            assert!((m_n.t12.norm() - m_1.t12.norm()).abs() < 1e-13 * m_1.t12.norm());
        }
    }

    #[test]
    fn free_phase_of_full_turn_leaves_cell_unchanged() {
        // choose ε so that ρ(n + m − 1) = 2π
        let (n, m) = (3u32, 2u32);
        let period = f64::from(n + m - 1);
        let rho = 2.0 * std::f64::consts::PI / period;
        let eps = 1.0 - rho.cos();
        let d = pair(eps, 1.9);
        let sys = BarrierSystem::new(1.9, n, m, 2).unwrap();
        let (g, _) = cell_matrix(&d, &sys).unwrap();
        let t = transfer_matrix_single(&d, n).unwrap();
        assert!(g.max_scaled_difference(&t) < 1e-14);
    }

    #[test]
    fn half_trace_matches_explicit_product() {
        let d = pair(0.4, 1.1);
        let sys = BarrierSystem::new(1.1, 4, 3, 3).unwrap();
        let (g, _) = cell_matrix(&d, &sys).unwrap();
        let explicit = transfer_matrix_single(&d, 4).unwrap()
            * CellParameters::polymer(&d, 4, 6).free_matrix();
        assert!((g.t11.re - explicit.t11.re).abs() <= 1e-15 * explicit.t11.re.abs().max(1.0));
    }

    #[test]
    fn resonance_is_transparent() {
        // scan for a sign change of U_{N−1} inside an allowed band and bisect
        let (u0, n, m, count) = (1.063, 2, 2, 3);
        let sys = BarrierSystem::new(u0, n, m, count).unwrap();
        let u_of = |e: f64| composition(&pair(e, u0), &sys, SiteCounting::default()).unwrap().cheb;
        let mut found = 0;
        let mut prev_e = 0.01;
        let mut prev = u_of(prev_e);
        for i in 2..1000 {
            let e = u0 * i as f64 / 1000.0;
            let cur = u_of(e);
            if cur.u_nminus1.signum() != prev.u_nminus1.signum() && cur.g.abs() < 1.0 && prev.g.abs() < 1.0 {
                let (mut lo, mut hi) = (prev_e, e);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if u_of(mid).u_nminus1.signum() == u_of(lo).u_nminus1.signum() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let t = transmission_n(&pair(lo, u0), &sys).unwrap();
                assert!((1.0 - t).abs() < 1e-12, "𝒯 = {t} at {lo}");
                // the same zero located through θ = kπ/N
                let theta = |e: f64| u_of(e).g.acos();
                let k = (theta(lo) * f64::from(count) / std::f64::consts::PI).round();
                let target = k * std::f64::consts::PI / f64::from(count);
                let (mut a, mut b) = (prev_e, e);
                for _ in 0..200 {
                    let mid = 0.5 * (a + b);
                    if (theta(mid) - target).signum() == (theta(a) - target).signum() {
                        a = mid;
                    } else {
                        b = mid;
                    }
                }
                assert!((a - lo).abs() < 1e-8);
                found += 1;
            }
            prev = cur;
            prev_e = e;
        }
        assert!(found >= 2, "expected resonances, found {found}");
    }

    #[test]
    fn phase_single_count_offsets_single_barrier_phase() {
        // arg(G₁₁) = δ_single + ρ(m − 1)
        for (eps, u0, n, m) in [(0.3, 1.0, 2, 1), (0.3, 1.0, 2, 4), (0.9, 1.5, 6, 3)] {
            let d = pair(eps, u0);
            let sys = BarrierSystem::new(u0, n, m, 1).unwrap();
            let expected = single::phase_delta(&d, n).unwrap() + d.rho * f64::from(m - 1);
            let diff = crate::derivative::wrap_half_turn(phase_n(&d, &sys).unwrap() - expected);
            assert!(diff.abs() < 1e-12);
        }
    }

    #[test]
    fn single_count_time_matches_closed_form_plus_free_offset() {
        for (eps, u0, n, m) in [(0.3, 1.0, 2, 1), (0.3, 1.0, 2, 4), (0.1, 0.5, 5, 2)] {
            let d = pair(eps, u0);
            let sys = BarrierSystem::new(u0, n, m, 1).unwrap();
            let tau_n = tunneling_time_n_at(&sys, eps).unwrap().tau;
            // dρ/dε = 1/sin ρ
            let offset = f64::from(m - 1) / d.sigma;
            let closed = single::tunneling_time_closed(&d, n).unwrap();
            assert!((tau_n - offset - closed).abs() <= 1e-6 * closed, "{tau_n} {offset} {closed}");
        }
    }

    #[test]
    fn unwrapped_sweep_is_continuous() {
        let sys = BarrierSystem::new(1.063, 2, 2, 3).unwrap();
        let grid = EnergyGrid::fractions(2000).scaled(sys.ceiling());
        let phases: Vec<f64> = phase_n_sweep(&sys, &grid).into_iter().map(|r| r.unwrap()).collect();
        let raw: Vec<f64> = grid.iter().map(|e| phase_n(&pair(e, 1.063), &sys).unwrap()).collect();
        let raw_jump = raw.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max);
        let jump = phases.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max);
        assert!(raw_jump > 3.0, "raw principal values should jump");
        assert!(jump < 0.5, "largest step {jump}");
    }

    #[test]
    fn errors_propagate() {
        let sys = BarrierSystem::new(0.5, 2, 2, 3).unwrap();
        assert!(transmission_n(&pair(0.5, 0.5), &sys).is_err());
        assert!(tunneling_time_n_at(&sys, 0.7).is_err());
        let grid = EnergyGrid::new(vec![0.1, 0.2, 0.6], 2.0).unwrap();
        let out = phase_n_sweep(&sys, &grid);
        assert!(out[0].is_ok() && out[1].is_ok() && out[2].is_err());
    }

    proptest! {
        #[test]
        fn determinants_are_one(u0 in 0.05f64..4.0, frac in 0.01f64..0.99, n in 1u32..20, m in 1u32..20, count in 1u32..51) {
            let d = pair((u0 * frac).min(1.98), u0);
            prop_assume!(d.kappa * f64::from(n * count) < 150.0);
            let sys = BarrierSystem::new(u0, n, m, count).unwrap();
            let t1 = transfer_matrix_single(&d, n).unwrap();
            prop_assert!((t1.determinant() - 1.0).norm() <= 1e-12 * t1.t11.norm_sqr().max(1.0));
            prop_assert!(t1.conjugate_structure_defect() == 0.0);
            let tn = transfer_matrix_n(&d, &sys).unwrap();
            prop_assert!((tn.determinant() - 1.0).norm() <= 1e-10 * tn.t11.norm_sqr().max(1.0));
        }

        #[test]
        fn closed_form_matches_matrix_power(u0 in 0.05f64..4.0, frac in 0.01f64..0.99, n in 1u32..8, m in 1u32..8, count in 1u32..26) {
            let d = pair((u0 * frac).min(1.98), u0);
            let sys = BarrierSystem::new(u0, n, m, count).unwrap();
            let c = composition(&d, &sys, SiteCounting::default()).unwrap();
            prop_assert!(c.matrix().max_scaled_difference(&c.matrix_by_power()) <= 1e-10);
        }

        #[test]
        fn two_transmission_forms_agree(u0 in 0.05f64..4.0, frac in 0.01f64..0.99, n in 1u32..20, m in 1u32..20, count in 1u32..30) {
            let d = pair((u0 * frac).min(1.98), u0);
            let sys = BarrierSystem::new(u0, n, m, count).unwrap();
            let c = composition(&d, &sys, SiteCounting::default()).unwrap();
            let t = c.transmission();
            // deep in a gap the true value can lie below the smallest double
            prop_assert!((0.0..=1.0).contains(&t));
            if d.kappa * f64::from(n * count) < 150.0 {
                prop_assert!((t - c.matrix().transmission()).abs() <= 1e-13);
            }
        }
    }
}
