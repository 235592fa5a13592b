//! 2×2 complex transfer matrices mapping plane-wave amplitudes `(A, B)` of
//! `ψ_μ = A e^{iρμ} + B e^{−iρμ}` across a scatterer.

use std::ops::Mul;

use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransferMatrix {
    pub t11: Complex64,
    pub t12: Complex64,
    pub t21: Complex64,
    pub t22: Complex64,
}

impl TransferMatrix {
    pub const IDENTITY: TransferMatrix = TransferMatrix {
        t11: Complex64::new(1.0, 0.0),
        t12: Complex64::new(0.0, 0.0),
        t21: Complex64::new(0.0, 0.0),
        t22: Complex64::new(1.0, 0.0),
    };

    /// Builds `[[a, b], [b*, a*]]`, the form every lossless cell takes.
    pub fn conjugate_pair(t11: Complex64, t12: Complex64) -> Self {
        Self { t11, t12, t21: t12.conj(), t22: t11.conj() }
    }

    pub fn diagonal(d1: Complex64, d2: Complex64) -> Self {
        Self { t11: d1, t12: Complex64::new(0.0, 0.0), t21: Complex64::new(0.0, 0.0), t22: d2 }
    }

    pub fn determinant(&self) -> Complex64 {
        self.t11 * self.t22 - self.t12 * self.t21
    }

    pub fn trace(&self) -> Complex64 {
        self.t11 + self.t22
    }

    /// Elementwise complex conjugate.
    pub fn conj(&self) -> Self {
        Self { t11: self.t11.conj(), t12: self.t12.conj(), t21: self.t21.conj(), t22: self.t22.conj() }
    }

    /// `k`-th power by repeated multiplication.
    pub fn power(&self, k: u32) -> Self {
        (0..k).fold(Self::IDENTITY, |acc, _| acc * *self)
    }

    pub fn elements(&self) -> [Complex64; 4] {
        [self.t11, self.t12, self.t21, self.t22]
    }

    /// Largest elementwise distance, each scaled by `max(1, |other_ij|)`.
    pub fn max_scaled_difference(&self, other: &Self) -> f64 {
        self.elements()
            .iter()
            .zip(other.elements())
            .map(|(a, b)| (a - b).norm() / b.norm().max(1.0))
            .fold(0.0, f64::max)
    }

    /// Deviation from the `[[a, b], [b*, a*]]` structure.
    pub fn conjugate_structure_defect(&self) -> f64 {
        (self.t22 - self.t11.conj()).norm().max((self.t21 - self.t12.conj()).norm())
    }

    /// Transmission coefficient `1/|M₁₁|²` for unit incidence from the left
    /// and no wave incoming from the right.
    pub fn transmission(&self) -> f64 {
        1.0 / self.t11.norm_sqr()
    }
}

impl Mul for TransferMatrix {
    type Output = TransferMatrix;

    fn mul(self, b: TransferMatrix) -> TransferMatrix {
        let a = self;
        TransferMatrix {
            t11: a.t11 * b.t11 + a.t12 * b.t21,
            t12: a.t11 * b.t12 + a.t12 * b.t22,
            t21: a.t21 * b.t11 + a.t22 * b.t21,
            t22: a.t21 * b.t12 + a.t22 * b.t22,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_and_power() {
        let a = TransferMatrix { t11: c(1.0, 1.0), t12: c(0.0, 2.0), t21: c(-1.0, 0.0), t22: c(0.5, 0.0) };
        let b = TransferMatrix { t11: c(2.0, 0.0), t12: c(1.0, -1.0), t21: c(0.0, 1.0), t22: c(3.0, 0.0) };
        let p = a * b;
        assert_eq!(p.t11, c(1.0, 1.0) * c(2.0, 0.0) + c(0.0, 2.0) * c(0.0, 1.0));
        assert_eq!(p.t22, c(-1.0, 0.0) * c(1.0, -1.0) + c(0.5, 0.0) * c(3.0, 0.0));
        assert_eq!(a.power(0), TransferMatrix::IDENTITY);
        assert_eq!(a.power(1), a);
        assert_eq!(a.power(3), a * a * a);
        let det = (a * b).determinant() - a.determinant() * b.determinant();
        assert!(det.norm() < 1e-13);
    }

    #[test]
    fn conjugate_pair_structure() {
        let m = TransferMatrix::conjugate_pair(c(1.2, 0.3), c(0.1, -0.7));
        assert_eq!(m.conjugate_structure_defect(), 0.0);
        assert!(((m.trace().re / 2.0) - 1.2).abs() < 1e-15);
        assert!(m.trace().im.abs() < 1e-15);
    }
}
