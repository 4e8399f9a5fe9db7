//! Plant parameters, derived coefficient symbols and the hybrid matrix of
//! the actuator two-port closed by a spring-damper virtual coupler.
//!
//! Units are rotational SI throughout: stiffness in N·m/rad, damping in
//! N·m·s/rad, inertia in kg·m². Nothing is converted.

use alloc::vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::RationalFunction;

/// Actuator and controller parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SystemParams {
    /// Series spring stiffness, N·m/rad.
    pub k_f: f64,
    /// Series damping, N·m·s/rad.
    pub b_f: f64,
    /// Actuator inertia, kg·m².
    pub m: f64,
    /// Actuator viscous damping, N·m·s/rad.
    pub b: f64,
    /// Motion controller proportional gain, N·m·s/rad.
    pub p_m: f64,
    /// Motion controller integral gain, N·m/rad.
    pub i_m: f64,
    /// Force controller proportional gain, rad/(N·m·s).
    pub p_f: f64,
    /// Force controller integral gain, rad/(N·m·s²).
    pub i_f: f64,
    /// Retained fraction of the force feed-forward cancellation; 1 means none.
    pub alpha: f64,
}

impl SystemParams {
    /// The nominal bench parameters, without feed-forward.
    pub fn nominal() -> Self {
        SystemParams {
            k_f: 362.0,
            b_f: 0.05,
            m: 6.399e-4,
            b: 0.169,
            p_m: 0.28,
            i_m: 100.0,
            p_f: 40.0,
            i_f: 70.0,
            alpha: 1.0,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [("Kf", self.k_f), ("M", self.m), ("B", self.b), ("Pm", self.p_m), ("Pf", self.p_f)];
        for (field, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParams { field, reason: "must be positive and finite" });
            }
        }
        for (field, v) in [("Bf", self.b_f), ("Im", self.i_m), ("If", self.i_f)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidParams { field, reason: "must be non-negative and finite" });
            }
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::InvalidParams { field: "alpha", reason: "must lie in [0, 1]" });
        }
        Ok(())
    }
}

/// Spring-damper coupler between the device and the virtual environment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VirtualCoupler {
    /// N·m/rad.
    pub k22: f64,
    /// N·m·s/rad.
    pub b22: f64,
}

impl VirtualCoupler {
    pub fn new(k22: f64, b22: f64) -> Self {
        VirtualCoupler { k22, b22 }
    }

    pub fn validate(&self) -> Result<()> {
        for (field, v) in [("k22", self.k22), ("b22", self.b22)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidParams { field, reason: "must be non-negative and finite" });
            }
        }
        Ok(())
    }
}

/// Coupler-independent symbols.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlantCoefficients {
    pub a4: f64,
    pub a3: f64,
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
    pub mu: f64,
    pub nu: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub kappa3: f64,
    pub tau2: f64,
    /// Re h11(jω)·|D(jω)|² = x·(r3x³ + r2x² + r1x + r0), x = ω².
    pub r3: f64,
    pub r2: f64,
    pub r1: f64,
    pub r0: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedCoefficients {
    pub plant: PlantCoefficients,
    pub tau1: f64,
    /// x²·(t3x³ + t2x² + t1x + t0) is the two-port determinant polynomial.
    pub t3: f64,
    pub t2: f64,
    pub t1: f64,
    pub t0: f64,
}

pub fn plant_coefficients(p: &SystemParams) -> Result<PlantCoefficients> {
    p.validate()?;
    let SystemParams { k_f, b_f, m, b, p_m, i_m, p_f, i_f, alpha } = *p;
    let mu = i_m / p_m;
    let nu = i_f / p_f;
    let pp = p_m * p_f;
    let a4 = m;
    let a3 = b + p_m + b_f * (alpha + pp);
    let a2 = i_m + k_f * (alpha + pp) + b_f * pp * (mu + nu);
    let a1 = b_f * i_m * i_f + k_f * pp * (mu + nu);
    let a0 = k_f * i_m * i_f;
    let kappa1 = p_f * i_m - b * i_f;
    let kappa2 = b + p_m - m * (mu + nu);
    let kappa3 = alpha * (b + p_m) + pp * kappa2;
    let bpm = b + p_m;
    let tau2 = 2.0 * m * (i_m + alpha * k_f) - (bpm + alpha * b_f) * (bpm + alpha * b_f);
    Ok(PlantCoefficients {
        a4,
        a3,
        a2,
        a1,
        a0,
        mu,
        nu,
        kappa1,
        kappa2,
        kappa3,
        tau2,
        r3: b_f * m * m,
        r2: b_f * (bpm * bpm + b_f * kappa3 - 2.0 * i_m * m),
        r1: k_f * k_f * kappa3 + b_f * i_m * i_m + b_f * b_f * i_m * kappa1,
        r0: i_m * k_f * k_f * kappa1,
    })
}

pub fn derive_coefficients(p: &SystemParams, vc: &VirtualCoupler) -> Result<DerivedCoefficients> {
    vc.validate()?;
    let c = plant_coefficients(p)?;
    let (k, b22, m) = (vc.k22, vc.b22, p.m);
    let tau1 = 4.0 * p.b_f - b22;
    let g = p.i_m + p.alpha * p.k_f;
    Ok(DerivedCoefficients {
        plant: c,
        tau1,
        t3: tau1 * b22 * m * m,
        t2: 4.0 * b22 * c.r2 + b22 * b22 * c.tau2 - k * k * m * m,
        t1: 4.0 * b22 * c.r1 + k * k * c.tau2 - b22 * b22 * g * g,
        t0: 4.0 * b22 * c.r0 - k * k * g * g,
    })
}

/// h11 and h12 over their common denominator, with any common power of s
/// cancelled (integral gains of zero leave one).
#[derive(Clone, Debug, PartialEq)]
pub struct PlantTransfer {
    pub n11: Polynomial,
    pub n12: Polynomial,
    pub den: Polynomial,
}

impl PlantTransfer {
    pub fn h11(&self) -> RationalFunction {
        RationalFunction::new(self.n11.clone(), self.den.clone()).expect("denominator is nonzero")
    }

    pub fn h12(&self) -> RationalFunction {
        RationalFunction::new(self.n12.clone(), self.den.clone()).expect("denominator is nonzero")
    }
}

pub fn plant_transfer(p: &SystemParams) -> Result<PlantTransfer> {
    let c = plant_coefficients(p)?;
    let SystemParams { k_f, b_f, m, b, p_m, i_m, p_f, .. } = *p;
    let bpm = b + p_m;
    let pp = p_m * p_f;
    let n11 = Polynomial::new(vec![0.0, k_f * i_m, b_f * i_m + k_f * bpm, b_f * bpm + k_f * m, b_f * m]);
    // shares a0 and a1 with the denominator so low-frequency cancellation is exact
    let n12 = Polynomial::new(vec![c.a0, c.a1, pp * (k_f + b_f * (c.mu + c.nu)), b_f * pp]);
    let den = Polynomial::new(vec![c.a0, c.a1, c.a2, c.a3, c.a4]);
    let k = den.trailing_zeros().min(n11.trailing_zeros()).min(n12.trailing_zeros());
    Ok(PlantTransfer { n11: n11.shift_down(k), n12: n12.shift_down(k), den: den.shift_down(k) })
}

/// s/(b22·s + k22), reduced to 1/b22 for a pure damper.
pub fn coupler_admittance(vc: &VirtualCoupler) -> Result<RationalFunction> {
    vc.validate()?;
    if vc.k22 == 0.0 && vc.b22 == 0.0 {
        return Err(Error::InvalidParams { field: "k22", reason: "k22 and b22 cannot both be zero" });
    }
    if vc.k22 == 0.0 {
        return Ok(RationalFunction::constant(1.0 / vc.b22));
    }
    RationalFunction::new(Polynomial::new(vec![0.0, 1.0]), Polynomial::new(vec![vc.k22, vc.b22]))
}

#[derive(Clone, Debug, PartialEq)]
pub struct HybridMatrix {
    /// N·m·s/rad.
    pub h11: RationalFunction,
    pub h12: RationalFunction,
    pub h21: RationalFunction,
    /// rad/(N·m·s).
    pub h22: RationalFunction,
}

pub fn hybrid_matrix(p: &SystemParams, vc: &VirtualCoupler) -> Result<HybridMatrix> {
    let t = plant_transfer(p)?;
    Ok(HybridMatrix {
        h11: t.h11(),
        h12: t.h12(),
        h21: RationalFunction::constant(-1.0),
        h22: coupler_admittance(vc)?,
    })
}

/// The matrix at s = jω, row-major.
pub fn eval_h(h: &HybridMatrix, omega: f64) -> Result<[[Complex64; 2]; 2]> {
    if !(omega.is_finite() && omega >= 0.0) {
        return Err(Error::NonFinite);
    }
    Ok([
        [h.h11.eval_jw(omega)?, h.h12.eval_jw(omega)?],
        [h.h21.eval_jw(omega)?, h.h22.eval_jw(omega)?],
    ])
}
