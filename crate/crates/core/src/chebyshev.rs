//! Chebyshev polynomials of the second kind, `U_k(g)`, used to raise a
//! unimodular 2×2 matrix with half-trace `g` to the `N`-th power:
//! `G^N = U_{N−1}(g)·G − U_{N−2}(g)·I`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Half-width of the band around `|g| = 1` where the closed forms lose
/// precision and the recurrence is used instead.
pub const BOUNDARY_BAND: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `|g| < 1`: `g = cos θ`, allowed band with resonances.
    Oscillatory,
    /// `|g| > 1`: `|g| = cosh φ`, gap.
    Hyperbolic,
    /// `|g|` within [`BOUNDARY_BAND`] of one.
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChebyshevEval {
    pub g: f64,
    pub count: u32,
    /// `U_{N−1}(g)`
    pub u_nminus1: f64,
    /// `U_{N−2}(g)`
    pub u_nminus2: f64,
    pub branch: Branch,
}

impl ChebyshevEval {
    /// `U_N(g)` from the three-term recurrence.
    pub fn u_n(&self) -> f64 {
        2.0 * self.g * self.u_nminus1 - self.u_nminus2
    }

    /// `U_{N−1}² − U_N·U_{N−2}`, identically one.
    pub fn pell_defect(&self) -> f64 {
        self.u_nminus1 * self.u_nminus1 - self.u_n() * self.u_nminus2 - 1.0
    }
}

/// Returns `(U_{N−1}(g), U_{N−2}(g))` by recurrence from `U_{−1} = 0`, `U_0 = 1`.
pub fn recurrence(g: f64, count: u32) -> (f64, f64) {
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 1..count {
        let next = 2.0 * g * cur - prev;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Evaluates `U_{N−1}(g)` and `U_{N−2}(g)` on the branch selected by `|g|`.
pub fn chebyshev_u(g: f64, count: u32) -> Result<ChebyshevEval> {
    if count == 0 {
        return Err(Error::Domain("Chebyshev order needs N ≥ 1".into()));
    }
    if !g.is_finite() {
        return Err(Error::Domain(format!("Chebyshev argument must be finite, got {g}")));
    }
    let nf = f64::from(count);
    let abs = g.abs();
    // U_k(−g) = (−1)^k U_k(g); evaluate at |g| and restore the sign
    let sign = g.signum();
    let (s1, s2) = if count % 2 == 1 { (1.0, sign) } else { (sign, 1.0) };
    let (u1, u2, branch) = if abs < 1.0 - BOUNDARY_BAND {
        // 1 − |g| is exact near the band edge, unlike the argument of acos
        let theta = if abs > 0.5 { 2.0 * ((1.0 - abs) / 2.0).sqrt().asin() } else { abs.acos() };
        let s = theta.sin();
        (s1 * (nf * theta).sin() / s, s2 * ((nf - 1.0) * theta).sin() / s, Branch::Oscillatory)
    } else if abs > 1.0 + BOUNDARY_BAND {
        let w = abs - 1.0;
        let phi = (w + (w * (w + 2.0)).sqrt()).ln_1p();
        let s = phi.sinh();
        (s1 * (nf * phi).sinh() / s, s2 * ((nf - 1.0) * phi).sinh() / s, Branch::Hyperbolic)
    } else {
        let (a, b) = recurrence(g, count);
        (a, b, Branch::Boundary)
    };
    Ok(ChebyshevEval { g, count, u_nminus1: u1, u_nminus2: u2, branch })
}
