//! Numerical differentiation for phase-derived times.
//!
//! Central differences are extrapolated to zero step with a Neville tableau
//! (Ridders' scheme), which also yields an error estimate. Phase variants
//! reduce each difference modulo π first, so branch jumps of the arctangent
//! never reach the quotient.

use std::f64::consts::{FRAC_PI_2, PI};

const SHRINK: f64 = 1.4;
const SHRINK2: f64 = SHRINK * SHRINK;
const TABLEAU: usize = 10;
const SAFE: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    /// Spread between the last tableau entries that produced `value`.
    pub error: f64,
}

/// Result of [`adaptive_phase_derivative`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeEstimate {
    pub tau: f64,
    pub error: f64,
    /// How many times the initial step was divided by ten.
    pub refinements: u32,
}

/// Reduces a phase difference to `(−π/2, π/2]`.
pub fn wrap_half_turn(d: f64) -> f64 {
    let r = d - PI * (d / PI).round();
    if r <= -FRAC_PI_2 {
        r + PI
    } else {
        r
    }
}

/// Removes jumps of any multiple of π by nearest continuation from the
/// first sample.
pub fn unwrap_phase(values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut offset = 0.0;
    let mut prev: Option<f64> = None;
    for &v in values {
        if let Some(p) = prev {
            if v.is_finite() && p.is_finite() {
                let raw = v - p;
                offset += wrap_half_turn(raw) - raw;
            }
        }
        out.push(v + offset);
        if v.is_finite() {
            prev = Some(v);
        }
    }
    out
}

fn ridders(quotient: impl Fn(f64) -> f64, h0: f64) -> Derivative {
    assert!(h0 > 0.0, "initial step must be positive");
    let mut a = [[0.0f64; TABLEAU]; TABLEAU];
    let mut hh = h0;
    a[0][0] = quotient(hh);
    let mut best = Derivative { value: a[0][0], error: f64::INFINITY };
    for i in 1..TABLEAU {
        hh /= SHRINK;
        a[0][i] = quotient(hh);
        let mut fac = SHRINK2;
        for j in 1..=i {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= SHRINK2;
            let errt = (a[j][i] - a[j - 1][i]).abs().max((a[j][i] - a[j - 1][i - 1]).abs());
            if errt <= best.error {
                best = Derivative { value: a[j][i], error: errt };
            }
        }
        if (a[i][i] - a[i - 1][i - 1]).abs() >= SAFE * best.error {
            break;
        }
    }
    best
}

/// `f'(x)` from Richardson-extrapolated central differences starting at
/// step `h0`. The function must be smooth on `[x − h0, x + h0]`.
pub fn richardson_central(f: impl Fn(f64) -> f64, x: f64, h0: f64) -> Derivative {
    ridders(|h| (f(x + h) - f(x - h)) / (2.0 * h), h0)
}

/// Derivative of a phase defined modulo π.
pub fn phase_derivative(phase: impl Fn(f64) -> f64, x: f64, h0: f64) -> Derivative {
    ridders(|h| wrap_half_turn(phase(x + h) - phase(x - h)) / (2.0 * h), h0)
}

/// Phase derivative with step subdivision: while the tableau error exceeds
/// `rel_tol·|τ|` the step is divided by ten, at most `max_refinements`
/// times. The most accurate estimate seen is returned.
pub fn adaptive_phase_derivative(
    phase: impl Fn(f64) -> f64,
    x: f64,
    h0: f64,
    rel_tol: f64,
    max_refinements: u32,
) -> TimeEstimate {
    let mut h = h0;
    let mut best: Option<TimeEstimate> = None;
    for refinements in 0..=max_refinements {
        let d = phase_derivative(&phase, x, h);
        let candidate = TimeEstimate { tau: d.value, error: d.error, refinements };
        let better = best.is_none_or(|b| candidate.error / candidate.tau.abs().max(f64::MIN_POSITIVE)
            < b.error / b.tau.abs().max(f64::MIN_POSITIVE));
        if better {
            best = Some(candidate);
        }
        if d.error <= rel_tol * d.value.abs() {
            break;
        }
        h /= 10.0;
    }
    best.expect("at least one evaluation")
}

/// Phase time at `x` inside the open interval `(lo, hi)` on which `phase` is
/// defined. The starting step is a thousandth of the distance to the nearer
/// end; sharp resonances trigger up to six tenfold subdivisions.
pub fn phase_time_in(phase: impl Fn(f64) -> f64, x: f64, lo: f64, hi: f64) -> TimeEstimate {
    const REL_TOL: f64 = 1e-8;
    let h0 = 1e-3 * (x - lo).min(hi - x);
    let est = adaptive_phase_derivative(phase, x, h0, REL_TOL, 6);
    if est.error > REL_TOL * est.tau.abs() {
        log::warn!(
            "phase derivative at {x} missed relative accuracy {REL_TOL:e}: best error {:e} after {} step refinements",
            est.error,
            est.refinements
        );
    } else if est.refinements > 0 {
        log::debug!("phase derivative at {x} needed {} step refinements", est.refinements);
    }
    est
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_functions() {
        let d = richardson_central(f64::exp, 0.3, 0.1);
        assert!((d.value - 0.3f64.exp()).abs() < 1e-12, "{d:?}");
        let d = richardson_central(|x| (PI * x / 2.0).sin(), 1.0, 1e-2);
        assert!(d.value.abs() < 1e-12);
    }

    #[test]
    fn wrapping_hides_branch_jumps() {
        // atan has a jump of π across x = 0 for 1/x; its derivative is smooth
        let phase = |x: f64| (1.0 / x).atan();
        let x = 1e-4;
        let d = phase_derivative(phase, x, 2e-4);
        let exact = -1.0 / (1.0 + x * x);
        assert!((d.value - exact).abs() < 1e-9, "{d:?}");
    }

    #[test]
    fn wrap_range() {
        for d in [-7.0, -FRAC_PI_2, -1.0, 0.0, 1.0, FRAC_PI_2, 3.0, 10.0] {
            let w = wrap_half_turn(d);
            assert!(w > -FRAC_PI_2 - 1e-15 && w <= FRAC_PI_2 + 1e-15);
            let k = (d - w) / PI;
            assert!((k - k.round()).abs() < 1e-12);
        }
    }

    #[test]
    fn unwrap_restores_continuity() {
        let truth: Vec<f64> = (0..400).map(|i| 0.05 * i as f64).collect();
        let wrapped: Vec<f64> = truth.iter().map(|t| t.sin().atan2(t.cos())).collect();
        let halves: Vec<f64> = truth.iter().map(|t| (t.sin() / t.cos()).atan()).collect();
        for raw in [wrapped, halves] {
            let u = unwrap_phase(&raw);
            for (a, b) in u.iter().zip(&truth) {
                assert!((a - b).abs() < 1e-12);
            }
        }
        assert!(unwrap_phase(&[]).is_empty());
    }

    #[test]
    fn adaptive_refines_sharp_features() {
        // Lorentzian resonance of width 1e-7: phase = atan((x - x0)/w)
        let (x0, w) = (0.5, 1e-7);
        let phase = |x: f64| ((x - x0) / w).atan();
        let est = adaptive_phase_derivative(phase, x0 + 2e-7, 1e-4, 1e-8, 8);
        let exact = (1.0 / w) / (1.0 + 4.0);
        assert!(est.refinements > 0);
        assert!((est.tau - exact).abs() / exact < 1e-7, "{est:?}");
    }
}
