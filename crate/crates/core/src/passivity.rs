//! Two-port passivity, its simpler sufficient conditions, and absolute
//! stability of the actuator two-port with a spring-damper coupler.
//!
//! Every closed-form inequality is evaluated next to an exact polynomial
//! route. The exact route decides; `routes_agree` records whether the
//! printed inequalities said the same thing.

use alloc::vec::Vec;

use libm::sqrt;
use num_complex::Complex64;

use crate::error::{Error, Infeasibility, Result};
use crate::grid::LogGrid;
use crate::model::{
    derive_coefficients, plant_coefficients, plant_transfer, DerivedCoefficients, PlantCoefficients,
    PlantTransfer, SystemParams, VirtualCoupler,
};
use crate::poly::{
    cubic_nonneg_certified, nonneg_exact, ratio_minimum, to_exact, CubicBranch, Polynomial, QPoly,
};
use crate::stability::{axis_analysis, imaginary_axis_pole, quartic_hurwitz, residue_at, Quartic};
use crate::tol::Tolerances;

/// Stability of the isolated plant h11.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionA {
    pub pass: bool,
    /// a1(a2a3 − a1a4) − a0a3²; zero when the quartic route does not apply.
    pub margin: f64,
    pub scale: f64,
    /// The quartic had positive coefficients, so the closed form applied.
    pub closed_form: bool,
    pub routes_agree: bool,
}

/// Residues of h11 on the imaginary axis.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionB {
    pub pass: bool,
    /// No imaginary-axis poles: nothing to check.
    pub vacuous: bool,
    pub axis_poles: Vec<f64>,
    /// a3b1 − a1b3 on the quartic route.
    pub beta: Option<f64>,
    pub routes_agree: bool,
}

/// Why the real-part condition of h11 failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CiFailure {
    /// r0 < 0, i.e. If > Im·Pf/B.
    ConstantTerm,
    /// Neither printed branch holds.
    Branches,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionCi {
    pub pass: bool,
    /// Branch of the printed inequalities that holds.
    pub branch: Option<CubicBranch>,
    pub failure: Option<CiFailure>,
    pub witness_frequency: Option<f64>,
    pub routes_agree: bool,
}

/// Which requirement of the coupler condition is violated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CiiFailure {
    /// b22 = 0: the highest surviving coefficient is −k22²M².
    LeadingCoefficient,
    /// b22 > 4·Bf, so t3 < 0.
    DampingRange,
    /// t0 < 0: k22 above √(4·b22·r0)/(Im + α·Kf).
    ConstantTerm,
    /// Neither printed branch holds.
    Branches,
}

impl CiiFailure {
    pub fn id(&self) -> &'static str {
        match self {
            CiiFailure::LeadingCoefficient => "leading-coefficient",
            CiiFailure::DampingRange => "damping-range",
            CiiFailure::ConstantTerm => "constant-term",
            CiiFailure::Branches => "branches",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionCii {
    pub pass: bool,
    pub branch: Option<CubicBranch>,
    pub failure: Option<CiiFailure>,
    pub witness_frequency: Option<f64>,
    /// Minimum over x ≥ 0 of t(x)/S(x), S summing the term magnitudes of each
    /// coefficient; in [−1, 1] and negative exactly when the cubic goes negative.
    pub margin: f64,
    pub routes_agree: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionId {
    A,
    B,
    CI,
    CII,
}

impl ConditionId {
    pub fn label(&self) -> &'static str {
        match self {
            ConditionId::A => "a",
            ConditionId::B => "b",
            ConditionId::CI => "c-i",
            ConditionId::CII => "c-ii",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PassivityReport {
    pub condition_a: ConditionA,
    pub condition_b: ConditionB,
    pub condition_c_i: ConditionCi,
    pub condition_c_ii: ConditionCii,
    pub overall: bool,
    /// Margins and violating frequencies, by condition.
    pub witnesses: Vec<(ConditionId, f64)>,
    /// Smallest normalized value of Re h11·Re h22 − |h12* + h21|²/4 on the default grid.
    pub grid_margin: f64,
    /// No grid violation contradicts a passing real-part verdict.
    pub grid_agrees: bool,
}

fn quartic_of(c: &PlantCoefficients) -> Quartic {
    Quartic::new(c.a4, c.a3, c.a2, c.a1, c.a0)
}

/// Stability of h11: printed closed form plus Routh margin, or an exact
/// root-location route when an integral gain of zero leaves a coefficient at zero.
pub fn check_condition_a(p: &SystemParams, tol: &Tolerances) -> Result<ConditionA> {
    let c = plant_coefficients(p)?;
    let q = quartic_of(&c);
    match quartic_hurwitz(&q, tol.boundary_rel) {
        Ok(v) => {
            let closed = condition_a_closed_form(p, &c, tol.boundary_rel);
            Ok(ConditionA {
                pass: v.stable,
                margin: v.margin,
                scale: v.scale,
                closed_form: true,
                routes_agree: closed == v.stable,
            })
        }
        Err(Error::NonPositiveCoefficient { .. }) => {
            let t = plant_transfer(p)?;
            let a = axis_analysis(&to_exact(&t.den)?)?;
            Ok(ConditionA { pass: a.rhp_free, margin: 0.0, scale: 0.0, closed_form: false, routes_agree: true })
        }
        Err(e) => Err(e),
    }
}

/// The inequality in the plant symbols, algebraically the Routh margin divided by Kf·Im·If.
fn condition_a_closed_form(p: &SystemParams, c: &PlantCoefficients, rel: f64) -> bool {
    let (mu, nu) = (c.mu, c.nu);
    let bpm = p.b + p.p_m;
    let pp = p.p_m * p.p_f;
    let lhs = p.k_f * mu * nu / (p.b_f * mu * nu + p.k_f * (mu + nu)) * c.a3 * c.a3;
    let rhs = p.b_f * (p.alpha + pp) * c.a2
        + (c.kappa3 + p.b_f * pp / p.k_f * (bpm * (mu + nu) - p.m * mu * nu)) * p.k_f
        + p.i_m * bpm;
    lhs <= rhs + rel * (lhs.abs() + rhs.abs())
}

fn residue_ok(r: Complex64, rel: f64) -> bool {
    r.re > 0.0 && r.im.abs() <= rel * r.norm()
}

/// Imaginary-axis poles of h11 must be simple with real positive residues.
pub fn check_condition_b(p: &SystemParams, tol: &Tolerances) -> Result<ConditionB> {
    let c = plant_coefficients(p)?;
    let t = plant_transfer(p)?;
    let q = quartic_of(&c);
    if quartic_hurwitz(&q, tol.boundary_rel).is_ok() {
        let Some(w) = imaginary_axis_pole(&q, tol.boundary_rel) else {
            return Ok(vacuous_b());
        };
        let b3 = t.n11.coeff(4);
        let b2 = t.n11.coeff(3);
        let b1 = t.n11.coeff(2);
        let b0 = t.n11.coeff(1);
        let beta = c.a3 * b1 - c.a1 * b3;
        let lhs = beta * (c.a2 * c.a3 - 2.0 * c.a1 * c.a4);
        let rhs = (c.a3 * b0 - c.a1 * b2) * c.a3 * c.a3;
        let equal = (lhs - rhs).abs() <= tol.residue_rel * (lhs.abs() + rhs.abs());
        let closed = beta > 0.0 && equal;
        let numeric = residue_ok(residue_at(&t.n11, &t.den, Complex64::new(0.0, w)), tol.residue_rel);
        return Ok(ConditionB {
            pass: closed,
            vacuous: false,
            axis_poles: alloc::vec![w],
            beta: Some(beta),
            routes_agree: closed == numeric,
        });
    }
    let a = axis_analysis(&to_exact(&t.den)?)?;
    if a.axis_poles.is_empty() {
        return Ok(vacuous_b());
    }
    let mut pass = a.axis_simple;
    for &w in &a.axis_poles {
        pass &= residue_ok(residue_at(&t.n11, &t.den, Complex64::new(0.0, w)), tol.residue_rel);
    }
    Ok(ConditionB { pass, vacuous: false, axis_poles: a.axis_poles, beta: None, routes_agree: true })
}

fn vacuous_b() -> ConditionB {
    ConditionB { pass: true, vacuous: true, axis_poles: Vec::new(), beta: None, routes_agree: true }
}

/// The printed pair of alternatives for p3x³ + p2x² + p1x + p0 ≥ 0 on x ≥ 0;
/// `sqrt_3p3` is √(3·p3) written as M·√(3·damping).
fn printed_branches(p3: f64, p2: f64, p1: f64, p0: f64, sqrt_3p3: f64) -> Option<CubicBranch> {
    if p1 >= 0.0 && p2 + sqrt_3p3 * sqrt(p1) >= 0.0 {
        return Some(CubicBranch::Monotone);
    }
    let rho1 = p2 * p2 - 3.0 * p3 * p1;
    let rho2 = p1 * p2 - 9.0 * p3 * p0;
    if rho1 > 0.0 && rho2 < 0.0 && 4.0 * rho2 * p2 < 4.0 * p1 * rho1 + 3.0 * p3 * rho2 * rho2 / rho1 {
        return Some(CubicBranch::Discriminant);
    }
    None
}

fn cubic_exact(p3: f64, p2: f64, p1: f64, p0: f64) -> Result<QPoly> {
    to_exact(&Polynomial::new(alloc::vec![p0, p1, p2, p3]))
}

/// Re h11(jω) ≥ 0 for every ω.
pub fn check_condition_c_i(p: &SystemParams) -> Result<ConditionCi> {
    let c = plant_coefficients(p)?;
    let q = cubic_exact(c.r3, c.r2, c.r1, c.r0)?;
    let exact = nonneg_exact(&q, 0.0, f64::INFINITY, true)?;
    let printed = if c.r0 < 0.0 {
        None
    } else if c.r3 == 0.0 {
        exact.holds.then_some(CubicBranch::Quadratic)
    } else {
        printed_branches(c.r3, c.r2, c.r1, c.r0, p.m * sqrt(3.0 * p.b_f))
    };
    let failure = match (exact.holds, c.r0 < 0.0) {
        (true, _) => None,
        (false, true) => Some(CiFailure::ConstantTerm),
        (false, false) => Some(CiFailure::Branches),
    };
    Ok(ConditionCi {
        pass: exact.holds,
        branch: printed,
        failure,
        witness_frequency: exact.witness.map(|x| sqrt(x.max(0.0))),
        routes_agree: printed.is_some() == exact.holds,
    })
}

/// The coupler condition: t3x³ + t2x² + t1x + t0 ≥ 0 on x ≥ 0 together with 0 < b22 ≤ 4·Bf.
pub fn check_condition_c_ii(p: &SystemParams, vc: &VirtualCoupler) -> Result<ConditionCii> {
    let d = derive_coefficients(p, vc)?;
    c_ii_from(p, vc, &d)
}

fn c_ii_from(p: &SystemParams, vc: &VirtualCoupler, d: &DerivedCoefficients) -> Result<ConditionCii> {
    let q = cubic_exact(d.t3, d.t2, d.t1, d.t0)?;
    let in_range = vc.b22 > 0.0 && d.tau1 >= 0.0;
    let (holds, witness) = if q.is_zero() {
        (in_range, None)
    } else {
        let v = nonneg_exact(&q, 0.0, f64::INFINITY, true)?;
        (v.holds && in_range, v.witness)
    };
    let printed = if !in_range || d.t0 < 0.0 {
        None
    } else if d.t3 == 0.0 {
        holds.then_some(CubicBranch::Quadratic)
    } else {
        printed_branches(d.t3, d.t2, d.t1, d.t0, p.m * sqrt(3.0 * vc.b22 * d.tau1))
    };
    let failure = if holds {
        None
    } else if vc.b22 <= 0.0 {
        Some(CiiFailure::LeadingCoefficient)
    } else if d.tau1 < 0.0 {
        Some(CiiFailure::DampingRange)
    } else if d.t0 < 0.0 {
        Some(CiiFailure::ConstantTerm)
    } else {
        Some(CiiFailure::Branches)
    };
    let poly = Polynomial::new(alloc::vec![d.t0, d.t1, d.t2, d.t3]);
    let scale = c_ii_scale(p, vc, d);
    let margin = if scale.is_zero() { 0.0 } else { ratio_minimum(&poly, &scale, 0.0, f64::INFINITY)? };
    Ok(ConditionCii {
        pass: holds,
        branch: printed,
        failure,
        witness_frequency: witness.map(|x| sqrt(x.max(0.0))),
        margin: if in_range { margin } else { margin.min(-f64::MIN_POSITIVE) },
        routes_agree: printed.is_some() == holds,
    })
}

/// Magnitudes of the terms making up each t coefficient, so the margin
/// t(x)/S(x) moves continuously with the parameters.
fn c_ii_scale(p: &SystemParams, vc: &VirtualCoupler, d: &DerivedCoefficients) -> Polynomial {
    let c = &d.plant;
    let (k2, b, m2) = (vc.k22 * vc.k22, vc.b22, p.m * p.m);
    let g = p.i_m + p.alpha * p.k_f;
    let g2 = g * g;
    Polynomial::new(alloc::vec![
        4.0 * b * c.r0.abs() + k2 * g2,
        4.0 * b * c.r1.abs() + k2 * c.tau2.abs() + b * b * g2,
        4.0 * b * c.r2.abs() + b * b * c.tau2.abs() + k2 * m2,
        (4.0 * p.b_f + b) * b * m2,
    ])
}

/// Normalized minimum of the coupler cubic on x ≥ 0, negative exactly when
/// the coupler condition fails there.
pub fn c_ii_margin(p: &SystemParams, vc: &VirtualCoupler) -> Result<f64> {
    Ok(check_condition_c_ii(p, vc)?.margin)
}

fn c_ii_feasible(c: &PlantCoefficients, p: &SystemParams, b22: f64, k22: f64) -> Result<bool> {
    let tau1 = 4.0 * p.b_f - b22;
    let g = p.i_m + p.alpha * p.k_f;
    let m = p.m;
    let t3 = tau1 * b22 * m * m;
    let t2 = 4.0 * b22 * c.r2 + b22 * b22 * c.tau2 - k22 * k22 * m * m;
    let t1 = 4.0 * b22 * c.r1 + k22 * k22 * c.tau2 - b22 * b22 * g * g;
    let t0 = 4.0 * b22 * c.r0 - k22 * k22 * g * g;
    if let Some(v) = cubic_nonneg_certified(t3, t2, t1, t0) {
        return Ok(v);
    }
    let q = cubic_exact(t3, t2, t1, t0)?;
    if q.is_zero() {
        return Ok(true);
    }
    Ok(nonneg_exact(&q, 0.0, f64::INFINITY, false)?.holds)
}

const K22_SCAN: usize = 64;
const K22_TOL: f64 = 1e-3;

/// The largest k22 for which the coupler condition holds at this b22.
///
/// The bracket is [0, √(4·b22·r0)/(Im + α·Kf)], the bound from t0 ≥ 0.
/// A uniform scan picks the largest feasible point and bisection refines the
/// boundary towards the next scan point to 1e−3 N·m/rad.
pub fn k22_upper_bound(p: &SystemParams, b22: f64) -> Result<f64> {
    let c = plant_coefficients(p)?;
    k22_upper_bound_with(&c, p, b22)
}

pub(crate) fn k22_upper_bound_with(c: &PlantCoefficients, p: &SystemParams, b22: f64) -> Result<f64> {
    if !(b22.is_finite() && b22 > 0.0) {
        return Err(Error::InvalidParams { field: "b22", reason: "must be positive" });
    }
    if b22 > 4.0 * p.b_f {
        return Err(Error::NoFeasibleK22(Infeasibility::DampingRange));
    }
    if c.r0 < 0.0 {
        return Err(Error::NoFeasibleK22(Infeasibility::ConstantTerm));
    }
    let g = p.i_m + p.alpha * p.k_f;
    let top = if g > 0.0 {
        sqrt(4.0 * b22 * c.r0) / g
    } else {
        // t0 vanishes identically; grow until infeasible
        let mut t = p.k_f.max(1.0);
        while c_ii_feasible(c, p, b22, t)? {
            t *= 2.0;
            if t > 1e12 {
                return Ok(f64::INFINITY);
            }
        }
        t
    };
    if !(top > 0.0) {
        return Err(Error::NoFeasibleK22(Infeasibility::ConstantTerm));
    }
    let mut best = None;
    for i in (1..=K22_SCAN).rev() {
        let k = top * i as f64 / K22_SCAN as f64;
        if c_ii_feasible(c, p, b22, k)? {
            best = Some(i);
            break;
        }
    }
    let (mut lo, mut hi) = match best {
        Some(K22_SCAN) => return Ok(top),
        Some(i) => (top * i as f64 / K22_SCAN as f64, top * (i + 1) as f64 / K22_SCAN as f64),
        None => {
            if !c_ii_feasible(c, p, b22, 0.0)? {
                return Err(Error::NoFeasibleK22(Infeasibility::NoCrossing));
            }
            (0.0, top / K22_SCAN as f64)
        }
    };
    while hi - lo > K22_TOL {
        let mid = 0.5 * (lo + hi);
        if c_ii_feasible(c, p, b22, mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// [`k22_upper_bound`] with infeasibility mapped to 0.
pub fn k22_upper_bound_or_zero(p: &SystemParams, b22: f64) -> Result<f64> {
    match k22_upper_bound(p, b22) {
        Err(Error::NoFeasibleK22(_)) => Ok(0.0),
        r => r,
    }
}

/// The determinant form of two-port passivity on a grid:
/// Re h11·Re h22 − |h12* + h21|²/4, normalized by its term magnitudes.
pub fn determinant_grid_margin(t: &PlantTransfer, vc: &VirtualCoupler, omegas: &[f64]) -> Result<(f64, f64)> {
    let h22 = crate::model::coupler_admittance(vc)?;
    let (h11, h12) = (t.h11(), t.h12());
    let mut worst = (f64::INFINITY, 0.0);
    for &w in omegas {
        let a = h11.eval_jw(w)?;
        let b = h12.eval_jw(w)?;
        let d = h22.eval_jw(w)?;
        let cross = b.conj() - 1.0;
        let t1 = a.re * d.re;
        let t2 = cross.norm_sqr() / 4.0;
        let scale = t1.abs() + t2;
        let v = if scale > 0.0 { (t1 - t2) / scale } else { 0.0 };
        if v < worst.0 {
            worst = (v, w);
        }
    }
    Ok(worst)
}

/// All four conditions, with a grid evaluation of the determinant form as a cross-check.
pub fn check_two_port_passivity(p: &SystemParams, vc: &VirtualCoupler, tol: &Tolerances) -> Result<PassivityReport> {
    let a = check_condition_a(p, tol)?;
    let b = check_condition_b(p, tol)?;
    let ci = check_condition_c_i(p)?;
    let cii = check_condition_c_ii(p, vc)?;
    let overall = a.pass && b.pass && ci.pass && cii.pass;
    let mut witnesses = Vec::new();
    witnesses.push((ConditionId::A, a.margin));
    if let Some(w) = ci.witness_frequency {
        witnesses.push((ConditionId::CI, w));
    }
    if let Some(w) = cii.witness_frequency {
        witnesses.push((ConditionId::CII, w));
    }
    for &w in &b.axis_poles {
        witnesses.push((ConditionId::B, w));
    }
    let t = plant_transfer(p)?;
    let (grid_margin, _) = determinant_grid_margin(&t, vc, &LogGrid::default().frequencies())?;
    let grid_pass = grid_margin >= -tol.sampling_rel;
    // a sampled grid can only refute; a violation on it must be a real one
    let grid_agrees = grid_pass || !(ci.pass && cii.pass);
    Ok(PassivityReport {
        condition_a: a,
        condition_b: b,
        condition_c_i: ci,
        condition_c_ii: cii,
        overall,
        witnesses,
        grid_margin,
        grid_agrees,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SufficientReport {
    pub pass: bool,
    /// First coefficient found negative, by name.
    pub violation: Option<&'static str>,
}

/// Every coefficient of both real-part polynomials non-negative.
pub fn check_sufficient_conditions(p: &SystemParams, vc: &VirtualCoupler) -> Result<SufficientReport> {
    let d = derive_coefficients(p, vc)?;
    let c = &d.plant;
    let checks = [
        ("r0", c.r0),
        ("r1", c.r1),
        ("r2", c.r2),
        ("t0", d.t0),
        ("t1", d.t1),
        ("t2", d.t2),
        ("t3", d.t3),
    ];
    let violation = checks.iter().find(|(_, v)| *v < 0.0).map(|(n, _)| *n);
    // t3 = 0 at b22 = 0 still leaves the coupler without damping
    let violation = violation.or((vc.b22 <= 0.0).then_some("t3"));
    Ok(SufficientReport { pass: violation.is_none(), violation })
}

/// h11 and h12 on a fixed grid, reused across couplers.
#[derive(Clone, Debug, PartialEq)]
pub struct PlantGrid {
    pub omegas: Vec<f64>,
    h11: Vec<Complex64>,
    h12: Vec<Complex64>,
}

impl PlantGrid {
    pub fn new(p: &SystemParams, omegas: &[f64]) -> Result<Self> {
        if omegas.is_empty() {
            return Err(Error::InvalidGrid { reason: "empty frequency list" });
        }
        if omegas.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidGrid { reason: "frequencies must be positive" });
        }
        let t = plant_transfer(p)?;
        let (h11, h12) = (t.h11(), t.h12());
        Ok(PlantGrid {
            omegas: omegas.to_vec(),
            h11: omegas.iter().map(|&w| h11.eval_jw(w)).collect::<Result<_>>()?,
            h12: omegas.iter().map(|&w| h12.eval_jw(w)).collect::<Result<_>>()?,
        })
    }

    /// Smallest normalized value of 2·Re h11·Re h22 − Re(h12h21) − |h12h21| and where it occurs.
    pub fn absolute_margin(&self, vc: &VirtualCoupler) -> Result<(f64, f64)> {
        let h22 = crate::model::coupler_admittance(vc)?;
        let mut worst = (f64::INFINITY, self.omegas[0]);
        for (i, &w) in self.omegas.iter().enumerate() {
            let re22 = h22.eval_jw(w)?.re;
            let prod = -self.h12[i];
            let first = 2.0 * self.h11[i].re * re22;
            let v = first - prod.re - prod.norm();
            let scale = first.abs() + prod.re.abs() + prod.norm();
            let n = if scale > 0.0 { v / scale } else { 0.0 };
            if n < worst.0 {
                worst = (n, w);
            }
        }
        Ok(worst)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AbsoluteStabilityReport {
    pub condition_a: ConditionA,
    pub condition_b: ConditionB,
    pub condition_c_i: ConditionCi,
    /// The coupled inequality held at every grid frequency.
    pub condition_c_ii: bool,
    /// Normalized minimum margin over the grid.
    pub min_margin: f64,
    pub argmin_frequency: f64,
    pub overall: bool,
}

/// Unconditional stability: h11 stable with a non-negative real part, and
/// 2·Re h11·Re h22 − Re(h12h21) − |h12h21| ≥ −ε at every grid frequency.
pub fn check_absolute_stability(
    p: &SystemParams,
    vc: &VirtualCoupler,
    omegas: &[f64],
    tol: &Tolerances,
) -> Result<AbsoluteStabilityReport> {
    let grid = PlantGrid::new(p, omegas)?;
    absolute_stability_on(p, vc, &grid, tol)
}

pub fn absolute_stability_on(
    p: &SystemParams,
    vc: &VirtualCoupler,
    grid: &PlantGrid,
    tol: &Tolerances,
) -> Result<AbsoluteStabilityReport> {
    let a = check_condition_a(p, tol)?;
    let b = check_condition_b(p, tol)?;
    let ci = check_condition_c_i(p)?;
    let (min_margin, argmin_frequency) = grid.absolute_margin(vc)?;
    let cii = min_margin >= -tol.sampling_rel;
    Ok(AbsoluteStabilityReport {
        overall: a.pass && b.pass && ci.pass && cii,
        condition_a: a,
        condition_b: b,
        condition_c_i: ci,
        condition_c_ii: cii,
        min_margin,
        argmin_frequency,
    })
}

/// The coupled inequality decided for every ω > 0 without a grid.
///
/// With x = ω², Q = k22² + b22²x, R11 = Re N11·D̄, P12 = Re N12·D̄, A = |N12|²
/// and G = |D|², it reads L = 2·b22·x·R11 + Q·P12 ≥ Q·√(A·G), i.e. L ≥ 0 and
/// L² − Q²·A·G ≥ 0 on x ≥ 0.
pub fn absolute_stability_exact(p: &SystemParams, vc: &VirtualCoupler) -> Result<bool> {
    vc.validate()?;
    let t = plant_transfer(p)?;
    let (n11, n12, d) = (to_exact(&t.n11)?, to_exact(&t.n12)?, to_exact(&t.den)?);
    let dr = d.reflect();
    let r11 = (&n11 * &dr).even_part_in_square();
    let p12 = (&n12 * &dr).even_part_in_square();
    let aa = (&n12 * &n12.reflect()).even_part_in_square();
    let g = (&d * &dr).even_part_in_square();
    let q = to_exact(&Polynomial::new(alloc::vec![vc.k22 * vc.k22, vc.b22 * vc.b22]))?;
    let x2b = to_exact(&Polynomial::new(alloc::vec![0.0, 2.0 * vc.b22]))?;
    let l = &(&x2b * &r11) + &(&q * &p12);
    let e = &(&l * &l) - &(&(&q * &q) * &(&aa * &g));
    let nonneg = |z: &QPoly| -> Result<bool> {
        if z.is_zero() {
            return Ok(true);
        }
        Ok(nonneg_exact(z, 0.0, f64::INFINITY, false)?.holds)
    };
    Ok(nonneg(&l)? && nonneg(&e)?)
}
