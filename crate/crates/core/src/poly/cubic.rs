//! Closed-form non-negativity of p3·x³ + p2·x² + p1·x + p0 on [0, ∞).

use libm::sqrt;

use super::sturm::nonneg_exact;
use super::{to_exact, Polynomial};

/// Which disjunct of the closed form certified non-negativity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubicBranch {
    /// p1 ≥ 0 and p2 ≥ −√(3·p1·p3): no interior critical point below zero.
    Monotone,
    /// σ = p2² − 3p1p3 > 0, σ₃ = p1p2 − 9p0p3 < 0 and the discriminant-type bound.
    Discriminant,
    /// p3 = 0; decided by the exact test on the quadratic.
    Quadratic,
}

/// The closed form as a decision; `None` when it fails.
///
/// An exactly touching double root is reported as failing by the second
/// branch (its last inequality is strict); the exact test accepts it.
pub fn cubic_nonneg_closed_form(p3: f64, p2: f64, p1: f64, p0: f64) -> Option<CubicBranch> {
    if p3 == 0.0 {
        let q = to_exact(&Polynomial::new(alloc::vec![p0, p1, p2])).ok()?;
        return nonneg_exact(&q, 0.0, f64::INFINITY, false)
            .ok()
            .filter(|v| v.holds)
            .map(|_| CubicBranch::Quadratic);
    }
    if !(p3 > 0.0 && p0 >= 0.0) {
        return None;
    }
    if p1 >= 0.0 && p2 >= -sqrt(3.0 * p1 * p3) {
        return Some(CubicBranch::Monotone);
    }
    let sigma = p2 * p2 - 3.0 * p1 * p3;
    let sigma3 = p1 * p2 - 9.0 * p0 * p3;
    if sigma > 0.0 && sigma3 < 0.0 && 4.0 * p2 * sigma3 < 4.0 * p1 * sigma + 3.0 * p3 * sigma3 * sigma3 / sigma {
        return Some(CubicBranch::Discriminant);
    }
    None
}

const CERTIFY_REL: f64 = 1e-6;

/// lhs − rhs with an ambiguity guard: `None` when rounding could flip the sign.
fn separated(lhs: f64, rhs: f64) -> Option<f64> {
    let d = lhs - rhs;
    if d.abs() <= CERTIFY_REL * (lhs.abs() + rhs.abs()) {
        None
    } else {
        Some(d)
    }
}

/// The closed form evaluated with a rounding guard on every comparison.
/// `Some(verdict)` is guaranteed to equal the exact answer for the given
/// coefficients; `None` means a comparison sits too close to equality.
pub fn cubic_nonneg_certified(p3: f64, p2: f64, p1: f64, p0: f64) -> Option<bool> {
    if !(p3.is_finite() && p2.is_finite() && p1.is_finite() && p0.is_finite()) {
        return None;
    }
    if p3 < 0.0 || p0 < 0.0 {
        return Some(false);
    }
    if p3 == 0.0 {
        return None;
    }
    // branch one, without the square root: p1 ≥ 0 and (p2 ≥ 0 or p2² ≤ 3p1p3)
    if p1 >= 0.0 {
        if p2 >= 0.0 {
            return Some(true);
        }
        if separated(3.0 * p1 * p3, p2 * p2)? > 0.0 {
            return Some(true);
        }
    }
    let sigma = separated(p2 * p2, 3.0 * p1 * p3)?;
    if sigma < 0.0 {
        return Some(false);
    }
    let sigma3 = separated(p1 * p2, 9.0 * p0 * p3)?;
    if sigma3 > 0.0 {
        return Some(false);
    }
    // 4·p2·σ₃·σ < 4·p1·σ² + 3·p3·σ₃²  (σ > 0)
    let d = separated(4.0 * p1 * sigma * sigma + 3.0 * p3 * sigma3 * sigma3, 4.0 * p2 * sigma3 * sigma)?;
    Some(d > 0.0)
}
