use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::exact::{ratio_to_f64, rational, sign};
use super::{to_exact, to_f64, Polynomial, QPoly};
use crate::error::{Error, Result};

/// Sturm chain of the square-free part of a polynomial, held exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct SturmChain {
    seq: Vec<QPoly>,
}

#[derive(Clone, Debug)]
enum Point {
    NegInf,
    At(BigRational),
    PosInf,
}

impl Point {
    fn from_f64(x: f64) -> Point {
        if x == f64::NEG_INFINITY {
            Point::NegInf
        } else if x == f64::INFINITY || x.is_nan() {
            debug_assert!(!x.is_nan(), "NaN evaluation point");
            Point::PosInf
        } else {
            Point::At(rational(x).expect("finite"))
        }
    }
}

fn sign_at(p: &QPoly, at: &Point) -> i8 {
    match (at, p.lead()) {
        (_, None) => 0,
        (Point::PosInf, Some(l)) => sign(l),
        (Point::NegInf, Some(l)) => {
            if p.degree() % 2 == 0 {
                sign(l)
            } else {
                -sign(l)
            }
        }
        (Point::At(x), _) => sign(&p.eval(x)),
    }
}

impl SturmChain {
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn exact(&self) -> &[QPoly] {
        &self.seq
    }

    pub fn polys(&self) -> Vec<Polynomial> {
        self.seq.iter().map(to_f64).collect()
    }

    /// The square-free polynomial the chain was built from.
    pub fn head(&self) -> &QPoly {
        &self.seq[0]
    }

    fn variations(&self, at: &Point) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.seq {
            let s = sign_at(p, at);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_q(&self, x: &BigRational) -> usize {
        self.variations(&Point::At(x.clone()))
    }
}

pub fn sturm_sequence(p: &Polynomial) -> Result<SturmChain> {
    sturm_sequence_exact(&to_exact(p)?)
}

/// Builds f₀ = p/gcd(p, p'), f₁ = f₀', f_{k+1} = −rem(f_{k−1}, f_k).
pub fn sturm_sequence_exact(p: &QPoly) -> Result<SturmChain> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let s = p.squarefree();
    let mut seq = Vec::with_capacity(s.degree() + 1);
    seq.push(s);
    if seq[0].degree() == 0 {
        return Ok(SturmChain { seq });
    }
    seq.push(seq[0].derivative());
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1])?;
        if r.is_zero() {
            break;
        }
        // only signs matter, so a positive rescale keeps the rationals short
        let l = r.lead().expect("nonzero").abs();
        seq.push(-r.scale(&(BigRational::one() / l)));
    }
    Ok(SturmChain { seq })
}

/// Sign changes of the chain evaluated at `at` (±∞ allowed), zeros skipped.
pub fn sign_variations(chain: &SturmChain, at: f64) -> usize {
    chain.variations(&Point::from_f64(at))
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if a.is_nan() || b.is_nan() || a >= b {
        return Err(Error::InvalidInterval { lo: a, hi: b });
    }
    Ok(())
}

/// Distinct real roots of p in the open interval (a, b).
pub fn count_real_roots(p: &Polynomial, a: f64, b: f64) -> Result<usize> {
    check_interval(a, b)?;
    let chain = sturm_sequence(p)?;
    let (pa, pb) = (Point::from_f64(a), Point::from_f64(b));
    let at_b = match &pb {
        Point::At(x) => usize::from(chain.head().eval(x).is_zero()),
        _ => 0,
    };
    // V(a) − V(b) counts roots in (a, b]
    Ok(chain.variations(&pa) - chain.variations(&pb) - at_b)
}

fn half(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(BigInt::from(2))
}

/// An isolating interval (lo, hi) holding exactly one root, or an exact root when lo == hi.
#[derive(Clone, Debug)]
struct Isolated {
    lo: BigRational,
    hi: BigRational,
}

impl Isolated {
    fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// One bisection step using only the sign of the square-free polynomial.
    fn bisect(&mut self, s: &QPoly) {
        if self.is_exact() {
            return;
        }
        let m = half(&self.lo, &self.hi);
        let sm = sign(&s.eval(&m));
        if sm == 0 {
            self.lo = m.clone();
            self.hi = m;
        } else if sm == sign(&s.eval(&self.lo)) {
            self.lo = m;
        } else {
            self.hi = m;
        }
    }

    fn approx(&self) -> f64 {
        ratio_to_f64(&half(&self.lo, &self.hi))
    }

    fn refine(&mut self, s: &QPoly) {
        for _ in 0..200 {
            if self.is_exact() {
                return;
            }
            let (l, h) = (ratio_to_f64(&self.lo), ratio_to_f64(&self.hi));
            if h - l <= 4.0 * f64::EPSILON * l.abs().max(h.abs()) || h - l < 1e-300 {
                return;
            }
            self.bisect(s);
        }
    }
}

/// Square-free polynomial stripped of roots at finite endpoints, with finite
/// endpoints bracketing every remaining root of interest.
struct Window {
    s: QPoly,
    chain: SturmChain,
    lo: BigRational,
    hi: BigRational,
}

impl Window {
    fn new(q: &QPoly, a: f64, b: f64) -> Result<Option<Window>> {
        let mut s = q.squarefree();
        for e in [a, b] {
            if e.is_finite() {
                let x = rational(e)?;
                if s.eval(&x).is_zero() {
                    let lin = QPoly::new(alloc::vec![-x, BigRational::one()]);
                    s = s.exact_div(&lin)?;
                }
            }
        }
        if s.degree() == 0 {
            return Ok(None);
        }
        let bound = s.root_bound();
        let one = BigRational::one();
        let lo = if a.is_finite() {
            rational(a)?
        } else {
            let hb = if b.is_finite() { rational(b)? - one.clone() } else { -bound.clone() };
            if hb < -bound.clone() { hb } else { -bound.clone() }
        };
        let hi = if b.is_finite() {
            rational(b)?
        } else {
            let la = lo.clone() + one;
            if la > bound { la } else { bound }
        };
        let chain = sturm_sequence_exact(&s)?;
        Ok(Some(Window { s, chain, lo, hi }))
    }

    /// Isolating intervals of all roots in (lo, hi), ascending.
    fn isolate(&self) -> Vec<Isolated> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![(self.lo.clone(), self.hi.clone())];
        while let Some((l, h)) = stack.pop() {
            let n = self.chain.variations_q(&l) - self.chain.variations_q(&h);
            if n == 0 {
                continue;
            }
            if n == 1 {
                out.push(Isolated { lo: l, hi: h });
                continue;
            }
            let m = self.split_point(&l, &h);
            // push right first so the left half is processed first
            stack.push((m.clone(), h));
            stack.push((l, m));
        }
        out
    }

    /// A point strictly inside (l, h) that is not a root.
    fn split_point(&self, l: &BigRational, h: &BigRational) -> BigRational {
        let mut k = 2i64;
        loop {
            let m = l + (h - l) / BigRational::from_integer(BigInt::from(k));
            if !self.s.eval(&m).is_zero() {
                return m;
            }
            k += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NonNegVerdict {
    pub holds: bool,
    /// A point with p(witness) < 0 when `holds` is false.
    pub witness: Option<f64>,
}

/// Is p(x) ≥ 0 on the interval from `a` to `b` (infinite ends allowed)?
pub fn is_nonnegative_on(p: &Polynomial, a: f64, b: f64) -> Result<NonNegVerdict> {
    check_interval(a, b)?;
    nonneg_exact(&to_exact(p)?, a, b, true)
}

/// Verdict-only form of [`is_nonnegative_on`].
pub fn nonnegative_on(p: &Polynomial, a: f64, b: f64) -> Result<bool> {
    check_interval(a, b)?;
    Ok(nonneg_exact(&to_exact(p)?, a, b, false)?.holds)
}

pub(crate) fn nonneg_exact(q: &QPoly, a: f64, b: f64, want_witness: bool) -> Result<NonNegVerdict> {
    let pass = NonNegVerdict { holds: true, witness: None };
    if q.is_zero() {
        return Ok(pass);
    }
    let interior = |lo: &BigRational, hi: &BigRational| half(lo, hi);
    let fallback_point = || -> Result<BigRational> {
        Ok(match (a.is_finite(), b.is_finite()) {
            (true, true) => half(&rational(a)?, &rational(b)?),
            (true, false) => rational(a)? + BigRational::one(),
            (false, true) => rational(b)? - BigRational::one(),
            (false, false) => BigRational::zero(),
        })
    };
    let Some(w) = Window::new(q, a, b)? else {
        // no roots strictly inside: one interior sample decides
        let x = fallback_point()?;
        return Ok(verdict_from_sample(q, &x, a, want_witness));
    };
    let mut roots = w.isolate();
    if roots.is_empty() {
        let x = interior(&w.lo, &w.hi);
        return Ok(verdict_from_sample(q, &x, a, want_witness));
    }
    // one sample per root-free gap: (lo, r₁), (r₁, r₂), …, (r_k, hi)
    let k = roots.len();
    while !roots[0].is_exact() && roots[0].lo == w.lo {
        roots[0].bisect(&w.s);
    }
    while !roots[k - 1].is_exact() && roots[k - 1].hi == w.hi {
        roots[k - 1].bisect(&w.s);
    }
    let mut samples = Vec::with_capacity(k + 1);
    samples.push(if roots[0].is_exact() { interior(&w.lo, &roots[0].lo) } else { roots[0].lo.clone() });
    for (r, next) in roots.iter().zip(&roots[1..]) {
        samples.push(if r.is_exact() { interior(&r.hi, &next.lo) } else { r.hi.clone() });
    }
    let last = &roots[k - 1];
    samples.push(if last.is_exact() { interior(&last.hi, &w.hi) } else { last.hi.clone() });

    for (g, x) in samples.iter().enumerate() {
        if q.eval(x).is_negative() {
            if !want_witness {
                return Ok(NonNegVerdict { holds: false, witness: None });
            }
            let witness = gap_witness(q, &w.s, &roots, g, x, a, b);
            return Ok(NonNegVerdict { holds: false, witness: Some(witness) });
        }
    }
    Ok(pass)
}

fn verdict_from_sample(q: &QPoly, x: &BigRational, a: f64, want_witness: bool) -> NonNegVerdict {
    if !q.eval(x).is_negative() {
        return NonNegVerdict { holds: true, witness: None };
    }
    let witness = if !want_witness {
        None
    } else if a.is_finite() && q.eval(&rational(a).expect("finite")).is_negative() {
        Some(a)
    } else {
        Some(ratio_to_f64(x))
    };
    NonNegVerdict { holds: false, witness }
}

/// A readable point in negative gap `g`: the finite left end if p < 0 there,
/// else the midpoint between the refined bracketing roots.
fn gap_witness(q: &QPoly, s: &QPoly, roots: &[Isolated], g: usize, sample: &BigRational, a: f64, b: f64) -> f64 {
    let neg = |x: f64| x.is_finite() && rational(x).map(|r| q.eval(&r).is_negative()).unwrap_or(false);
    if g == 0 && neg(a) {
        return a;
    }
    let refined = |i: usize| {
        let mut r = roots[i].clone();
        r.refine(s);
        r.approx()
    };
    let left = if g == 0 { None } else { Some(refined(g - 1)) };
    let right = if g == roots.len() { None } else { Some(refined(g)) };
    let candidate = match (left, right) {
        (Some(l), Some(r)) => 0.5 * (l + r),
        (None, Some(r)) => if a.is_finite() { 0.5 * (a + r) } else { r - 1.0_f64.max(r.abs()) },
        (Some(l), None) => if b.is_finite() { 0.5 * (l + b) } else { l + 1.0_f64.max(l.abs()) },
        (None, None) => ratio_to_f64(sample),
    };
    if neg(candidate) {
        candidate
    } else {
        ratio_to_f64(sample)
    }
}

/// Distinct real roots in the open interval (a, b), refined to double precision.
pub fn real_roots(p: &Polynomial, a: f64, b: f64) -> Result<Vec<f64>> {
    check_interval(a, b)?;
    real_roots_exact(&to_exact(p)?, a, b)
}

pub(crate) fn real_roots_exact(q: &QPoly, a: f64, b: f64) -> Result<Vec<f64>> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let Some(w) = Window::new(q, a, b)? else {
        return Ok(Vec::new());
    };
    Ok(w
        .isolate()
        .into_iter()
        .map(|mut r| {
            r.refine(&w.s);
            r.approx()
        })
        .collect())
}

/// min p(x) / Σ|cᵢ||x|ⁱ over the interval, a scale-free margin in [−1, 1]
/// whose sign is the sign of the minimum of p.
pub fn normalized_minimum(p: &Polynomial, a: f64, b: f64) -> Result<f64> {
    check_interval(a, b)?;
    if p.is_zero() {
        return Ok(0.0);
    }
    let ratio = |x: f64| {
        let s = p.abs_eval(x);
        if s == 0.0 { 0.0 } else { p.eval(&x) / s }
    };
    let mut best = f64::INFINITY;
    for e in [a, b] {
        if e.is_finite() {
            best = best.min(ratio(e));
        }
    }
    let lead = *p.lead().expect("nonzero");
    if p.degree() > 0 {
        if b == f64::INFINITY {
            best = best.min(lead.signum());
        }
        if a == f64::NEG_INFINITY {
            let s = if p.degree() % 2 == 0 { lead.signum() } else { -lead.signum() };
            best = best.min(s);
        }
    }
    let d = p.derivative();
    if !d.is_zero() && d.degree() > 0 {
        for x in real_roots(&d, a, b)? {
            best = best.min(ratio(x));
        }
    } else if best == f64::INFINITY {
        best = ratio(0.0);
    }
    Ok(best)
}

/// Minimum of n(x)/d(x) over [a, b] for a weight d positive inside it,
/// taken over the endpoints, infinite limits and the real roots of n'd − nd'.
pub fn ratio_minimum(n: &Polynomial, d: &Polynomial, a: f64, b: f64) -> Result<f64> {
    check_interval(a, b)?;
    if d.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    if n.is_zero() {
        return Ok(0.0);
    }
    let ratio = |x: f64| {
        let w = d.eval(&x);
        if w == 0.0 { f64::INFINITY } else { n.eval(&x) / w }
    };
    let mut best = f64::INFINITY;
    for e in [a, b] {
        if e.is_finite() {
            best = best.min(ratio(e));
        }
    }
    if b == f64::INFINITY {
        let (dn, dd) = (n.degree(), d.degree());
        let lim = if dn > dd {
            n.lead().expect("nonzero").signum() * f64::INFINITY
        } else if dn == dd {
            n.lead().expect("nonzero") / d.lead().expect("nonzero")
        } else {
            0.0
        };
        best = best.min(lim);
    }
    let crit = &(&n.derivative() * d) - &(n * &d.derivative());
    if crit.degree() > 0 {
        for x in real_roots(&crit, a, b)? {
            best = best.min(ratio(x));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn poly(c: &[f64]) -> Polynomial {
        Polynomial::new(c.to_vec())
    }

    #[test]
    fn chain_of_x2_minus_2() {
        let c = sturm_sequence(&poly(&[-2.0, 0.0, 1.0])).unwrap();
        // remainders come back divided by their leading magnitude
        assert_eq!(c.polys(), vec![poly(&[-2.0, 0.0, 1.0]), poly(&[0.0, 2.0]), poly(&[1.0])]);
        assert_eq!(sign_variations(&c, f64::NEG_INFINITY), 2);
        assert_eq!(sign_variations(&c, f64::INFINITY), 0);
        assert_eq!(sign_variations(&c, 0.0), 1);
    }

    #[test]
    fn chain_of_cube_uses_squarefree_part() {
        let c = sturm_sequence(&poly(&[0.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(c.polys(), vec![poly(&[0.0, 1.0]), poly(&[1.0])]);
    }

    #[test]
    fn chain_recurrence_for_cubic() {
        // x³ − 3x² + x + 1: four members ending in a positive constant
        let c = sturm_sequence(&poly(&[1.0, 1.0, -3.0, 1.0])).unwrap();
        assert_eq!(c.len(), 4);
        let last = c.exact().last().unwrap();
        assert_eq!(last.degree(), 0);
        assert!(last.lead().unwrap().is_positive());
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(sturm_sequence(&Polynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_real_roots(&poly(&[-2.0, 0.0, 1.0]), 0.0, f64::INFINITY), Ok(1));
        assert_eq!(count_real_roots(&poly(&[1.0, 0.0, 1.0]), f64::NEG_INFINITY, f64::INFINITY), Ok(0));
        let p = Polynomial::from_roots(&[-2.0, -1.0, 0.5, 3.0]);
        let p = &p * &poly(&[1.0, 0.0, 1.0]);
        assert_eq!(p.degree(), 6);
        assert_eq!(count_real_roots(&p, 0.0, f64::INFINITY), Ok(2));
        assert!(matches!(count_real_roots(&p, 1.0, 1.0), Err(Error::InvalidInterval { .. })));
    }

    #[test]
    fn open_interval_excludes_endpoints() {
        let p = Polynomial::from_roots(&[0.0, 1.0, 2.0]);
        assert_eq!(count_real_roots(&p, 0.0, 2.0), Ok(1));
        assert_eq!(count_real_roots(&p, -1.0, 2.5), Ok(3));
    }

    #[test]
    fn nonnegativity_examples() {
        let sq = is_nonnegative_on(&poly(&[0.0, 0.0, 1.0]), f64::NEG_INFINITY, f64::INFINITY).unwrap();
        assert!(sq.holds);
        let v = is_nonnegative_on(&poly(&[1.0, 1.0, -3.0, 1.0]), 0.0, f64::INFINITY).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert!(w > 1.0 && w < 1.0 + 2f64.sqrt());
        assert!(eval_f(&poly(&[1.0, 1.0, -3.0, 1.0]), w) < 0.0);
        assert!(is_nonnegative_on(&poly(&[1.0, 1.0, 1.0, 1.0]), 0.0, f64::INFINITY).unwrap().holds);
    }

    fn eval_f(p: &Polynomial, x: f64) -> f64 {
        p.eval(&x)
    }

    #[test]
    fn witness_prefers_finite_endpoint() {
        let v = is_nonnegative_on(&poly(&[-1.0, 1.0]), 0.0, f64::INFINITY).unwrap();
        assert_eq!(v, NonNegVerdict { holds: false, witness: Some(0.0) });
    }

    #[test]
    fn touching_double_root_is_nonnegative() {
        // (x − 2)²(x + 1) on [0, ∞)
        let p = Polynomial::from_roots(&[2.0, 2.0, -1.0]);
        assert!(nonnegative_on(&p, 0.0, f64::INFINITY).unwrap());
        assert!(!nonnegative_on(&p, -5.0, f64::INFINITY).unwrap());
    }

    #[test]
    fn roots_are_refined() {
        let r = real_roots(&poly(&[-2.0, 0.0, 1.0]), f64::NEG_INFINITY, f64::INFINITY).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0] + 2f64.sqrt()).abs() < 1e-14);
        assert!((r[1] - 2f64.sqrt()).abs() < 1e-14);
        let exact = real_roots(&Polynomial::from_roots(&[0.5, 0.25]), 0.0, 1.0).unwrap();
        assert_eq!(exact, vec![0.25, 0.5]);
    }

    #[test]
    fn ratio_minimum_of_shifted_parabola() {
        // (x − 1)² − 0.5 over 1 + x²: minimum −0.5 at x = 1 region
        let n = poly(&[0.5, -2.0, 1.0]);
        let d = poly(&[1.0, 0.0, 1.0]);
        let m = ratio_minimum(&n, &d, 0.0, f64::INFINITY).unwrap();
        let brute = (0..200000).map(|i| i as f64 * 1e-4).map(|x| n.eval(&x) / d.eval(&x)).fold(f64::INFINITY, f64::min);
        assert!((m - brute).abs() < 1e-6, "{m} {brute}");
    }

    #[test]
    fn normalized_minimum_sign() {
        assert!(normalized_minimum(&poly(&[1.0, 1.0, -3.0, 1.0]), 0.0, f64::INFINITY).unwrap() < 0.0);
        assert!(normalized_minimum(&poly(&[1.0, 1.0, 1.0, 1.0]), 0.0, f64::INFINITY).unwrap() > 0.0);
        assert_eq!(normalized_minimum(&poly(&[1.0, -1.0]), 0.0, f64::INFINITY).unwrap(), -1.0);
    }
}
