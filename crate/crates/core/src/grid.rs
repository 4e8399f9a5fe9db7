use alloc::vec::Vec;

use libm::{log10, pow};

use crate::error::{Error, Result};

/// Logarithmically spaced frequencies, endpoints included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Default for LogGrid {
    fn default() -> Self {
        LogGrid { min: 1e-3, max: 1e6, points: 4000 }
    }
}

impl LogGrid {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self> {
        let g = LogGrid { min, max, points };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.min.is_finite() && self.min > 0.0) {
            return Err(Error::InvalidGrid { reason: "minimum frequency must be positive" });
        }
        if !(self.max.is_finite() && self.max > self.min) {
            return Err(Error::InvalidGrid { reason: "maximum must exceed minimum" });
        }
        if self.points < 2 {
            return Err(Error::InvalidGrid { reason: "at least two points are needed" });
        }
        Ok(())
    }

    pub fn frequencies(&self) -> Vec<f64> {
        let (a, b) = (log10(self.min), log10(self.max));
        let n = self.points - 1;
        (0..self.points)
            .map(|i| match i {
                0 => self.min,
                _ if i == n => self.max,
                _ => pow(10.0, a + (b - a) * i as f64 / n as f64),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_spacing() {
        let f = LogGrid::new(1e-1, 1e3, 5).unwrap().frequencies();
        assert_eq!(f.len(), 5);
        assert_eq!(f[0], 0.1);
        assert_eq!(f[4], 1e3);
        assert!((f[2] - 10.0).abs() < 1e-12);
        assert!(LogGrid::new(0.0, 1.0, 3).is_err());
        assert!(LogGrid::new(1.0, 1.0, 3).is_err());
        assert!(LogGrid::new(1.0, 2.0, 1).is_err());
    }
}
