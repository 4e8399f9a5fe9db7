//! Maximum renderable coupler stiffness over coupler damping and feed-forward.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grid::LogGrid;
use crate::model::{plant_coefficients, SystemParams, VirtualCoupler};
use crate::passivity::{
    absolute_stability_exact, check_condition_a, check_condition_b, check_condition_c_i, k22_upper_bound_with,
    PlantGrid,
};
use crate::tol::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    TwoPortPassivity,
    AbsoluteStability,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizationResult {
    pub b22_opt: f64,
    pub alpha_opt: Option<f64>,
    pub k22_max: f64,
    pub criterion: Criterion,
    /// Every (b22, alpha, k22) evaluated, in order.
    pub trace: Vec<(f64, f64, f64)>,
    /// The search optimum is at least the best point of the uniform guard sweep.
    pub guard_ok: bool,
    /// Set when no coupler can pass, with the reason.
    pub note: Option<&'static str>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizeOptions {
    pub grid: LogGrid,
    pub tol: Tolerances,
    /// Stop when the b22 bracket is narrower than this, N·m·s/rad.
    pub b22_tol: f64,
    pub alpha_tol: f64,
    /// Stiffness resolution of the absolute-stability bisection, N·m/rad.
    pub k22_tol: f64,
    /// Re-bisect the absolute-stability optimum with the exact test.
    pub exact_refinement: bool,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            grid: LogGrid::default(),
            tol: Tolerances::default(),
            b22_tol: 1e-4,
            alpha_tol: 1e-3,
            k22_tol: 1e-3,
            exact_refinement: true,
        }
    }
}

const GUARD_POINTS: usize = 50;
const ALPHA_POINTS: usize = 11;
const INV_PHI: f64 = 0.618_033_988_749_894_9;
const NO_DAMPING: &str = "series damping Bf = 0 leaves no admissible coupler damping (0 < b22 <= 4*Bf)";

pub fn maximize_k22(p: &SystemParams, criterion: Criterion) -> Result<OptimizationResult> {
    maximize_k22_with(p, criterion, &OptimizeOptions::default())
}

fn baseline(p: &SystemParams, tol: &Tolerances) -> Result<()> {
    if !check_condition_a(p, tol)?.pass {
        return Err(Error::BaselineNotPassive { condition: "a" });
    }
    if !check_condition_b(p, tol)?.pass {
        return Err(Error::BaselineNotPassive { condition: "b" });
    }
    if !check_condition_c_i(p)?.pass {
        return Err(Error::BaselineNotPassive { condition: "c-i" });
    }
    Ok(())
}

/// k22 as a function of b22 for one plant.
struct Objective<'a> {
    p: &'a SystemParams,
    coeffs: crate::model::PlantCoefficients,
    grid: Option<PlantGrid>,
    opts: &'a OptimizeOptions,
    trace: Vec<(f64, f64, f64)>,
}

impl<'a> Objective<'a> {
    fn new(p: &'a SystemParams, criterion: Criterion, opts: &'a OptimizeOptions) -> Result<Self> {
        let grid = match criterion {
            Criterion::TwoPortPassivity => None,
            Criterion::AbsoluteStability => Some(PlantGrid::new(p, &opts.grid.frequencies())?),
        };
        Ok(Objective { p, coeffs: plant_coefficients(p)?, grid, opts, trace: Vec::new() })
    }

    fn eval(&mut self, b22: f64) -> Result<f64> {
        let k = match &self.grid {
            None => match k22_upper_bound_with(&self.coeffs, self.p, b22) {
                Err(Error::NoFeasibleK22(_)) => 0.0,
                r => r?,
            },
            Some(g) => absolute_k22_max(g, b22, self.opts)?,
        };
        self.trace.push((b22, self.p.alpha, k));
        Ok(k)
    }
}

/// Largest k22 passing the grid inequality at this b22, by doubling then bisection.
fn absolute_k22_max(g: &PlantGrid, b22: f64, opts: &OptimizeOptions) -> Result<f64> {
    let ok = |k: f64| -> Result<bool> {
        Ok(g.absolute_margin(&VirtualCoupler::new(k, b22))?.0 >= -opts.tol.sampling_rel)
    };
    if !ok(0.0)? {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, 256.0);
    while ok(hi)? {
        lo = hi;
        hi *= 2.0;
        if hi > 1e9 {
            return Ok(f64::INFINITY);
        }
    }
    while hi - lo > opts.k22_tol {
        let mid = 0.5 * (lo + hi);
        if ok(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Golden-section maximization of `f` on [a, b].
fn golden<F: FnMut(f64) -> Result<f64>>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)> {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}

/// Golden-section search on b22 in (0, 4·Bf], bracketed by the best point of
/// a 50-point uniform sweep.
pub fn maximize_k22_with(p: &SystemParams, criterion: Criterion, opts: &OptimizeOptions) -> Result<OptimizationResult> {
    let mut r = search_b22(p, criterion, opts)?;
    refine_exact(p, &mut r, opts)?;
    Ok(r)
}

/// A grid can step over a narrow violation, so the absolute-stability optimum
/// is re-bisected with the exact test between the passivity bound, which
/// implies absolute stability, and the grid value.
fn refine_exact(p: &SystemParams, r: &mut OptimizationResult, opts: &OptimizeOptions) -> Result<()> {
    if !opts.exact_refinement
        || r.criterion != Criterion::AbsoluteStability
        || r.k22_max == 0.0
        || !r.k22_max.is_finite()
    {
        return Ok(());
    }
    let b22 = r.b22_opt;
    let alpha = p.alpha;
    let ok = |k: f64| absolute_stability_exact(p, &VirtualCoupler::new(k, b22));
    if ok(r.k22_max)? {
        return Ok(());
    }
    let floor = match k22_upper_bound_with(&plant_coefficients(p)?, p, b22) {
        Err(Error::NoFeasibleK22(_)) => 0.0,
        k => k?,
    };
    let (mut lo, mut hi) = if ok(floor)? { (floor, r.k22_max) } else { (0.0, floor) };
    while hi - lo > opts.k22_tol {
        let mid = 0.5 * (lo + hi);
        if ok(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
        r.trace.push((b22, alpha, lo));
    }
    r.k22_max = lo;
    Ok(())
}

fn search_b22(p: &SystemParams, criterion: Criterion, opts: &OptimizeOptions) -> Result<OptimizationResult> {
    p.validate()?;
    opts.grid.validate()?;
    if p.b_f == 0.0 {
        return Ok(OptimizationResult {
            b22_opt: 0.0,
            alpha_opt: None,
            k22_max: 0.0,
            criterion,
            trace: Vec::new(),
            guard_ok: true,
            note: Some(NO_DAMPING),
        });
    }
    baseline(p, &opts.tol)?;
    let mut obj = Objective::new(p, criterion, opts)?;
    let top = 4.0 * p.b_f;
    let step = top / GUARD_POINTS as f64;
    let mut best = (0usize, f64::NEG_INFINITY);
    for i in 1..=GUARD_POINTS {
        let k = obj.eval(step * i as f64)?;
        if k > best.1 {
            best = (i, k);
        }
    }
    let lo = step * (best.0 as f64 - 1.0).max(0.0);
    let hi = (step * (best.0 + 1) as f64).min(top);
    let (mut b_opt, mut k_opt) = golden(|b| obj.eval(b.max(f64::MIN_POSITIVE)), lo, hi, opts.b22_tol)?;
    let guard_ok = k_opt >= best.1 - opts.k22_tol;
    if k_opt < best.1 {
        b_opt = step * best.0 as f64;
        k_opt = best.1;
    }
    Ok(OptimizationResult {
        b22_opt: b_opt,
        alpha_opt: None,
        k22_max: k_opt,
        criterion,
        trace: obj.trace,
        guard_ok,
        note: (k_opt == 0.0).then_some("no coupler stiffness passes for any b22 in (0, 4*Bf]"),
    })
}

pub fn maximize_k22_over_alpha(p: &SystemParams, criterion: Criterion) -> Result<OptimizationResult> {
    maximize_k22_over_alpha_with(p, criterion, &OptimizeOptions::default())
}

/// Outer golden-section on α ∈ [0, 1] around the best of an 11-point sweep,
/// with the b22 search inside.
pub fn maximize_k22_over_alpha_with(
    p: &SystemParams,
    criterion: Criterion,
    opts: &OptimizeOptions,
) -> Result<OptimizationResult> {
    let mut trace = Vec::new();
    let mut guard_ok = true;
    let mut best: Option<OptimizationResult> = None;
    let mut inner = |alpha: f64, trace: &mut Vec<_>, best: &mut Option<OptimizationResult>| -> Result<f64> {
        let r = search_b22(&p.with_alpha(alpha), criterion, opts)?;
        trace.extend_from_slice(&r.trace);
        guard_ok &= r.guard_ok;
        let k = r.k22_max;
        if best.as_ref().map_or(true, |b| k > b.k22_max) {
            *best = Some(OptimizationResult { alpha_opt: Some(alpha), ..r });
        }
        Ok(k)
    };
    let step = 1.0 / (ALPHA_POINTS - 1) as f64;
    let mut coarse = (0usize, f64::NEG_INFINITY);
    for i in 0..ALPHA_POINTS {
        let k = inner(step * i as f64, &mut trace, &mut best)?;
        if k > coarse.1 {
            coarse = (i, k);
        }
    }
    let lo = (step * (coarse.0 as f64 - 1.0)).max(0.0);
    let hi = (step * (coarse.0 as f64 + 1.0)).min(1.0);
    golden(|a| inner(a, &mut trace, &mut best), lo, hi, opts.alpha_tol)?;
    let mut r = best.expect("the sweep evaluates at least one alpha");
    r.trace = trace;
    r.guard_ok = guard_ok;
    let alpha = r.alpha_opt.expect("set by the sweep");
    refine_exact(&p.with_alpha(alpha), &mut r, opts)?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, f) = golden(|x| Ok(-(x - 0.3) * (x - 0.3)), 0.0, 1.0, 1e-6).unwrap();
        assert!((x - 0.3).abs() < 1e-5 && f <= 0.0);
    }

    #[test]
    fn nominal_without_feed_forward() {
        let r = maximize_k22(&SystemParams::nominal(), Criterion::TwoPortPassivity).unwrap();
        assert!((r.k22_max - 408.5).abs() < 1.0, "{}", r.k22_max);
        assert!((r.b22_opt - 0.17).abs() < 0.01, "{}", r.b22_opt);
        assert!(r.guard_ok);
    }

    #[test]
    fn no_series_damping() {
        let p = SystemParams { b_f: 0.0, ..SystemParams::nominal() };
        let r = maximize_k22(&p, Criterion::TwoPortPassivity).unwrap();
        assert_eq!(r.k22_max, 0.0);
        assert!(r.note.is_some());
    }

    #[test]
    fn baseline_must_pass() {
        let p = SystemParams { i_f: 30000.0, ..SystemParams::nominal() };
        assert_eq!(
            maximize_k22(&p, Criterion::TwoPortPassivity),
            Err(Error::BaselineNotPassive { condition: "c-i" })
        );
    }
}
