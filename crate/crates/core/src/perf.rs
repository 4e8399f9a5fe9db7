//! Rendering performance: transmitted impedance, its extremes, transparency
//! limits and the reference parameters that render a desired environment.

use alloc::vec::Vec;

use libm::{atan2, log10};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{eval_h, HybridMatrix};
use crate::poly::Polynomial;
use crate::rational::RationalFunction;

/// Magnitude reported for an exact zero.
pub const MIN_DB: f64 = -400.0;

/// Passive environment at the far port.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EnvironmentModel {
    Null,
    /// Ze = Ke/s, N·m/rad.
    Spring { ke: f64 },
    /// Ze = Be, N·m·s/rad.
    Damper { be: f64 },
    /// Ze = Ke/s + Be.
    Voigt { ke: f64, be: f64 },
}

impl EnvironmentModel {
    fn parts(&self) -> (f64, f64) {
        match *self {
            EnvironmentModel::Null => (0.0, 0.0),
            EnvironmentModel::Spring { ke } => (ke, 0.0),
            EnvironmentModel::Damper { be } => (0.0, be),
            EnvironmentModel::Voigt { ke, be } => (ke, be),
        }
    }

    pub fn impedance(&self) -> Result<RationalFunction> {
        let (ke, be) = self.parts();
        for (field, v) in [("Ke", ke), ("Be", be)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidParams { field, reason: "must be non-negative and finite" });
            }
        }
        if ke == 0.0 {
            return Ok(RationalFunction::constant(be));
        }
        RationalFunction::new(Polynomial::new(alloc::vec![ke, be]), Polynomial::new(alloc::vec![0.0, 1.0]))
    }
}

/// Z_to = (h11 + Δh·Ze)/(1 + h22·Ze), Δh = h11h22 − h12h21, composed and
/// reduced exactly.
pub fn transmitted_impedance(h: &HybridMatrix, env: &EnvironmentModel) -> Result<RationalFunction> {
    let ze = env.impedance()?.to_exact()?;
    let (h11, h12, h21, h22) = (h.h11.to_exact()?, h.h12.to_exact()?, h.h21.to_exact()?, h.h22.to_exact()?);
    let delta = h11.mul(&h22).sub(&h12.mul(&h21));
    let num = h11.add(&delta.mul(&ze));
    let one = crate::rational::QRational::from_poly(crate::poly::QPoly::one());
    let den = one.add(&h22.mul(&ze));
    if den.is_zero() {
        return Err(Error::DegenerateTermination);
    }
    Ok(num.div(&den)?.reduced().to_f64())
}

/// The impedance felt with a null environment, h11.
pub fn z_min(h: &HybridMatrix) -> RationalFunction {
    h.h11.clone()
}

/// −h12·h21/h22, left unreduced: N12·(b22·s + k22)/(D·s).
pub fn z_width(h: &HybridMatrix) -> Result<RationalFunction> {
    h.h12.mul(&h.h21).neg().div(&h.h22)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransparencyLimits {
    pub omega_low: f64,
    pub omega_high: f64,
    pub low: [[Complex64; 2]; 2],
    pub high: [[Complex64; 2]; 2],
    /// Within 1e−3 of [[0, 1], [−1, 0]].
    pub low_converged: bool,
    /// Within 1e−3 (relative) of [[Bf, 0], [−1, 1/b22]].
    pub high_converged: bool,
}

pub const TRANSPARENCY_LOW: f64 = 1e-4;
pub const TRANSPARENCY_HIGH: f64 = 1e7;
const LIMIT_TOL: f64 = 1e-3;

/// The matrix at the low and high ends of the band, against the ideal
/// pattern and the damping-dominated high-frequency pattern.
pub fn transparency_limits(h: &HybridMatrix, b_f: f64, b22: f64) -> Result<TransparencyLimits> {
    let low = eval_h(h, TRANSPARENCY_LOW)?;
    let high = eval_h(h, TRANSPARENCY_HIGH)?;
    let c = |v: f64| Complex64::new(v, 0.0);
    let ideal = [[c(0.0), c(1.0)], [c(-1.0), c(0.0)]];
    let low_converged = (0..4).all(|i| (low[i / 2][i % 2] - ideal[i / 2][i % 2]).norm() <= LIMIT_TOL);
    let rel = |got: Complex64, want: f64| {
        if want == 0.0 {
            got.norm() <= LIMIT_TOL
        } else {
            (got - want).norm() <= LIMIT_TOL * want.abs()
        }
    };
    let h22_high = if b22 > 0.0 { 1.0 / b22 } else { f64::INFINITY };
    let high_converged = rel(high[0][0], b_f)
        && rel(high[0][1], 0.0)
        && rel(high[1][0], -1.0)
        && (b22 == 0.0 || rel(high[1][1], h22_high));
    Ok(TransparencyLimits {
        omega_low: TRANSPARENCY_LOW,
        omega_high: TRANSPARENCY_HIGH,
        low,
        high,
        low_converged,
        high_converged,
    })
}

/// Environment stiffness that renders `kd` through a coupler spring k22 in series.
pub fn spring_reference(k22: f64, kd: f64) -> Result<f64> {
    series_reference(k22, kd)
}

/// Environment damping that renders `bd` through a coupler damper b22 in series.
pub fn voigt_reference(b22: f64, bd: f64) -> Result<f64> {
    series_reference(b22, bd)
}

fn series_reference(coupler: f64, desired: f64) -> Result<f64> {
    if !(desired >= 0.0 && desired < coupler) {
        return Err(Error::DesiredExceedsCoupler { desired, coupler });
    }
    Ok(coupler * desired / (coupler - desired))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BodePoint {
    pub omega: f64,
    pub magnitude_db: f64,
    pub phase_deg: f64,
}

/// 20·log10|Z(jω)| and phase unwrapped along the grid.
pub fn frequency_response(z: &RationalFunction, omegas: &[f64]) -> Result<Vec<BodePoint>> {
    let mut out = Vec::with_capacity(omegas.len());
    let mut prev: Option<f64> = None;
    for &w in omegas {
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::InvalidGrid { reason: "frequencies must be positive" });
        }
        let v = z.eval_jw(w)?;
        let mag = v.norm();
        let magnitude_db = if mag > 0.0 { (20.0 * log10(mag)).max(MIN_DB) } else { MIN_DB };
        let mut phase = atan2(v.im, v.re).to_degrees();
        if let Some(p) = prev {
            while phase - p > 180.0 {
                phase -= 360.0;
            }
            while phase - p < -180.0 {
                phase += 360.0;
            }
        }
        prev = Some(phase);
        out.push(BodePoint { omega: w, magnitude_db, phase_deg: phase });
    }
    Ok(out)
}
