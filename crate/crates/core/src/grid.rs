use crate::error::{Error, Result};

/// Strictly increasing energies inside an open interval `(0, ceiling)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EnergyGrid {
    points: Vec<f64>,
}

impl EnergyGrid {
    pub fn new(points: Vec<f64>, ceiling: f64) -> Result<Self> {
        if let Some(bad) = points.iter().find(|&&p| !(p > 0.0 && p < ceiling)) {
            return Err(Error::InvalidParameter(format!(
                "grid point {bad} outside the open interval (0, {ceiling})"
            )));
        }
        if let Some(w) = points.windows(2).find(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter(format!(
                "grid must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        Ok(Self { points })
    }

    /// `steps` evenly spaced points from `lo` to `hi` inclusive; a single
    /// step yields `[lo]`.
    pub fn linspace(lo: f64, hi: f64, steps: usize, ceiling: f64) -> Result<Self> {
        let points = match steps {
            0 => Vec::new(),
            1 => vec![lo],
            _ => {
                let dx = (hi - lo) / (steps - 1) as f64;
                (0..steps).map(|i| if i + 1 == steps { hi } else { lo + dx * i as f64 }).collect()
            }
        };
        Self::new(points, ceiling)
    }

    /// Cell midpoints `(i + ½)/steps` of the unit interval.
    pub fn fractions(steps: usize) -> Self {
        let s = steps as f64;
        Self { points: (0..steps).map(|i| (i as f64 + 0.5) / s).collect() }
    }

    /// Multiplies every point by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Self {
        assert!(factor > 0.0);
        Self { points: self.points.iter().map(|p| p * factor).collect() }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(EnergyGrid::new(vec![0.1, 0.2], 1.0).is_ok());
        assert!(EnergyGrid::new(vec![], 1.0).unwrap().is_empty());
        assert!(EnergyGrid::new(vec![0.0, 0.2], 1.0).is_err());
        assert!(EnergyGrid::new(vec![0.1, 1.0], 1.0).is_err());
        assert!(EnergyGrid::new(vec![0.2, 0.2], 1.0).is_err());
        assert!(EnergyGrid::new(vec![0.3, 0.2], 1.0).is_err());
    }

    #[test]
    fn linspace_endpoints() {
        let g = EnergyGrid::linspace(0.1, 0.9, 5, 1.0).unwrap();
        assert_eq!(g.points(), &[0.1, 0.30000000000000004, 0.5, 0.7000000000000001, 0.9]);
        assert_eq!(EnergyGrid::linspace(0.4, 0.9, 1, 1.0).unwrap().points(), &[0.4]);
        assert!(EnergyGrid::linspace(0.4, 0.9, 0, 1.0).unwrap().is_empty());
    }

    #[test]
    fn fractions_stay_inside() {
        let g = EnergyGrid::fractions(50);
        assert_eq!(g.len(), 50);
        assert!(EnergyGrid::new(g.points().to_vec(), 1.0).is_ok());
        let s = g.scaled(0.5);
        assert!(s.iter().all(|p| p > 0.0 && p < 0.5));
    }
}
