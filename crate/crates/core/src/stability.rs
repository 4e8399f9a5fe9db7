//! Pole location, residues on the imaginary axis and positive realness.

use alloc::vec::Vec;

use libm::sqrt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{nonnegative_on, normalized_minimum, to_f64, Polynomial, QPoly};
use crate::poly::{count_real_roots, nonneg_exact, real_roots};
use crate::rational::RationalFunction;
use crate::tol::Tolerances;

/// a4·s⁴ + a3·s³ + a2·s² + a1·s + a0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quartic {
    pub a4: f64,
    pub a3: f64,
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
}

impl Quartic {
    pub fn new(a4: f64, a3: f64, a2: f64, a1: f64, a0: f64) -> Self {
        Quartic { a4, a3, a2, a1, a0 }
    }

    pub fn from_poly(p: &Polynomial) -> Option<Quartic> {
        if p.degree() != 4 || p.is_zero() {
            return None;
        }
        let c = p.coeffs();
        Some(Quartic::new(c[4], c[3], c[2], c[1], c[0]))
    }

    pub fn to_poly(&self) -> Polynomial {
        Polynomial::new(alloc::vec![self.a0, self.a1, self.a2, self.a3, self.a4])
    }

    /// a1(a2a3 − a1a4) − a0a3², the last Routh first-column numerator.
    pub fn margin(&self) -> f64 {
        self.a1 * (self.a2 * self.a3 - self.a1 * self.a4) - self.a0 * self.a3 * self.a3
    }

    /// Magnitude of the terms making up the margin.
    pub fn margin_scale(&self) -> f64 {
        (self.a1 * self.a2 * self.a3).abs()
            + (self.a1 * self.a1 * self.a4).abs()
            + (self.a0 * self.a3 * self.a3).abs()
    }

    fn positive(&self) -> Result<()> {
        for (index, value) in [(4, self.a4), (3, self.a3), (2, self.a2), (1, self.a1), (0, self.a0)] {
            if !(value > 0.0) {
                return Err(Error::NonPositiveCoefficient { index, value });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuarticVerdict {
    /// No roots in the open right half plane.
    pub stable: bool,
    /// The margin is zero within tolerance: a simple pair sits on the imaginary axis.
    pub marginal: bool,
    pub margin: f64,
    pub scale: f64,
}

/// Hurwitz test of a quartic with positive coefficients.
pub fn quartic_hurwitz(q: &Quartic, rel_tol: f64) -> Result<QuarticVerdict> {
    q.positive()?;
    let margin = q.margin();
    let scale = q.margin_scale();
    let slack = rel_tol * scale;
    Ok(QuarticVerdict { stable: margin >= -slack, marginal: margin.abs() <= slack, margin, scale })
}

/// Frequency p of the pole pair ±jp when the margin vanishes, else `None`.
pub fn imaginary_axis_pole(q: &Quartic, rel_tol: f64) -> Option<f64> {
    let v = quartic_hurwitz(q, rel_tol).ok()?;
    if !v.marginal {
        return None;
    }
    let d = q.a2 * q.a3 - q.a1 * q.a4;
    if !(d > 0.0) {
        return None;
    }
    Some(sqrt(q.a0 * q.a3 / d))
}

/// b3·s³ + b2·s² + b1·s + b0, the cofactor of s in a driving-point numerator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicCofactor {
    pub b3: f64,
    pub b2: f64,
    pub b1: f64,
    pub b0: f64,
}

impl CubicCofactor {
    pub fn new(b3: f64, b2: f64, b1: f64, b0: f64) -> Self {
        CubicCofactor { b3, b2, b1, b0 }
    }

    /// s·(b3·s³ + b2·s² + b1·s + b0).
    pub fn numerator(&self) -> Polynomial {
        Polynomial::new(alloc::vec![0.0, self.b0, self.b1, self.b2, self.b3])
    }
}

/// Residue test at ±jp for Z = s·b(s)/a(s) with a marginal quartic a:
/// the residue is positive iff a1b3 − a3b1 < 0 and real iff
/// (a1b3 − a3b1)(a2a3 − 2a1a4) = −(a3b0 − a1b2)·a3².
pub fn residues_positive_real(num: &CubicCofactor, den: &Quartic, rel_tol: f64) -> Result<bool> {
    if imaginary_axis_pole(den, rel_tol).is_none() {
        return Err(Error::NoImaginaryPole);
    }
    let (a, b) = (den, num);
    let cross = a.a1 * b.b3 - a.a3 * b.b1;
    let lhs = cross * (a.a2 * a.a3 - 2.0 * a.a1 * a.a4);
    let rhs = -(a.a3 * b.b0 - a.a1 * b.b2) * a.a3 * a.a3;
    let real = (lhs - rhs).abs() <= rel_tol * (lhs.abs() + rhs.abs()).max(f64::MIN_POSITIVE);
    Ok(cross < 0.0 && real)
}

/// Numeric residue N(s₀)/D'(s₀) at a simple pole s₀.
pub fn residue_at(num: &Polynomial, den: &Polynomial, s0: Complex64) -> Complex64 {
    num.eval_complex(s0) / den.derivative().eval_complex(s0)
}

/// Where the roots of a real polynomial sit relative to the imaginary axis.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisAnalysis {
    /// No root with positive real part.
    pub rhp_free: bool,
    /// Frequencies ω ≥ 0 with D(jω) = 0, ascending.
    pub axis_poles: Vec<f64>,
    /// Every imaginary-axis root is simple.
    pub axis_simple: bool,
}

/// Exact root location: D = h·q with h = gcd(D(s), D(−s)) collecting the
/// imaginary-axis roots and mirror pairs; q is tested with a Routh array and
/// h, even in s, through the real roots of h(j√x).
pub fn axis_analysis(d: &QPoly) -> Result<AxisAnalysis> {
    if d.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let k = d.trailing_zeros();
    let d0 = d.shift_down(k);
    let mut axis_poles = Vec::new();
    if k > 0 {
        axis_poles.push(0.0);
    }
    if d0.degree() == 0 {
        return Ok(AxisAnalysis { rhp_free: true, axis_poles, axis_simple: k <= 1 });
    }
    let h = d0.gcd(&d0.reflect());
    let q = d0.exact_div(&h)?;
    let q_stable = routh_strictly_stable(&q);
    if h.degree() == 0 {
        return Ok(AxisAnalysis { rhp_free: q_stable, axis_poles, axis_simple: k <= 1 });
    }
    let g = h.even_part_in_square();
    let gs = g.squarefree();
    let gf = to_f64(&gs);
    let on_axis = count_real_roots(&gf, 0.0, f64::INFINITY)?;
    let all_on_axis = on_axis == gs.degree();
    for x in real_roots(&gf, 0.0, f64::INFINITY)? {
        axis_poles.push(sqrt(x));
    }
    Ok(AxisAnalysis {
        rhp_free: q_stable && all_on_axis,
        axis_poles,
        axis_simple: k <= 1 && g.degree() == gs.degree(),
    })
}

/// All roots strictly in the open left half plane, by an exact Routh array.
/// A zero pivot means the polynomial is not strictly Hurwitz.
pub fn routh_strictly_stable(q: &QPoly) -> bool {
    let n = q.degree();
    if q.is_zero() {
        return false;
    }
    let flip = q.lead().is_some_and(|l| l.is_negative());
    let c: Vec<BigRational> = q
        .coeffs()
        .iter()
        .rev()
        .map(|a| if flip { -a.clone() } else { a.clone() })
        .collect();
    let mut prev: Vec<BigRational> = c.iter().step_by(2).cloned().collect();
    let mut cur: Vec<BigRational> = c.iter().skip(1).step_by(2).cloned().collect();
    let at = |v: &Vec<BigRational>, j: usize| v.get(j).cloned().unwrap_or_else(BigRational::zero);
    for _ in 0..n {
        let pivot = at(&cur, 0);
        if !pivot.is_positive() {
            return false;
        }
        let len = prev.len().max(cur.len());
        let next: Vec<BigRational> = (0..len.saturating_sub(1))
            .map(|j| (pivot.clone() * at(&prev, j + 1) - at(&prev, 0) * at(&cur, j + 1)) / pivot.clone())
            .collect();
        prev = cur;
        cur = next;
    }
    true
}

#[derive(Clone, Debug, PartialEq)]
pub struct PositiveRealVerdict {
    /// No right-half-plane poles.
    pub stable: bool,
    /// Imaginary-axis pole frequencies; +∞ marks a pole at infinity.
    pub imaginary_axis_poles: Vec<f64>,
    /// Axis poles are simple with real positive residues.
    pub residues_ok: bool,
    /// Re Z(jω) ≥ 0 for every ω.
    pub real_part_nonneg: bool,
    /// A frequency with Re Z(jω) < 0.
    pub witness_frequency: Option<f64>,
    /// Normalized minimum of the real-part polynomial over ω².
    pub margin: f64,
}

impl PositiveRealVerdict {
    pub fn passive(&self) -> bool {
        self.stable && self.residues_ok && self.real_part_nonneg
    }
}

fn residue_ok(r: Complex64, rel: f64) -> bool {
    r.re > 0.0 && r.im.abs() <= rel * r.norm()
}

/// Positive-realness of an impedance, proper or with one pole at infinity.
pub fn positive_real(z: &RationalFunction, tol: &Tolerances) -> Result<PositiveRealVerdict> {
    let exact = z.to_exact()?.reduced();
    let (n, d) = (exact.exact_num(), exact.exact_den());
    if n.is_zero() {
        return Ok(PositiveRealVerdict {
            stable: true,
            imaginary_axis_poles: Vec::new(),
            residues_ok: true,
            real_part_nonneg: true,
            witness_frequency: None,
            margin: 0.0,
        });
    }
    let (nf, df) = (to_f64(n), to_f64(d));

    let quartic = Quartic::from_poly(&df).filter(|q| q.positive().is_ok());
    let (stable, mut poles, simple) = match quartic {
        Some(q) => {
            let v = quartic_hurwitz(&q, tol.boundary_rel)?;
            let poles = imaginary_axis_pole(&q, tol.boundary_rel).into_iter().collect();
            (v.stable, poles, true)
        }
        None => {
            let a = axis_analysis(d)?;
            (a.rhp_free, a.axis_poles, a.axis_simple)
        }
    };
    let mut residues_ok = simple;
    for &w in &poles {
        residues_ok &= residue_ok(residue_at(&nf, &df, Complex64::new(0.0, w)), tol.residue_rel);
    }
    let rel = n.degree() as isize - d.degree() as isize;
    if rel >= 1 {
        poles.push(f64::INFINITY);
        residues_ok &= rel == 1 && (n.lead().unwrap().is_positive() == d.lead().unwrap().is_positive());
    }

    let re = (n * &d.reflect()).even_part_in_square();
    let ref_f = to_f64(&re);
    let verdict = nonneg_exact(&re, 0.0, f64::INFINITY, true)?;
    let margin = if ref_f.is_zero() { 0.0 } else { normalized_minimum(&ref_f, 0.0, f64::INFINITY)? };
    Ok(PositiveRealVerdict {
        stable,
        imaginary_axis_poles: poles,
        residues_ok,
        real_part_nonneg: verdict.holds,
        witness_frequency: verdict.witness.map(|x| sqrt(x.max(0.0))),
        margin,
    })
}

/// Re N(jω)·D(−jω) as a polynomial in x = ω²; its sign is the sign of Re Z(jω).
pub fn real_part_polynomial(z: &RationalFunction) -> Result<Polynomial> {
    let e = z.to_exact()?;
    Ok(to_f64(&(e.exact_num() * &e.exact_den().reflect()).even_part_in_square()))
}

/// Re Z(jω) ≥ 0 for all ω, decided on the real-part polynomial.
pub fn real_part_nonnegative(z: &RationalFunction) -> Result<bool> {
    nonnegative_on(&real_part_polynomial(z)?, 0.0, f64::INFINITY)
}
