//! Univariate polynomials, Sturm chains and non-negativity tests.
//!
//! Coefficients are stored lowest degree first and trimmed, so the zero
//! polynomial is the empty list. [`Polynomial`] is the double-precision
//! face used for evaluation; [`QPoly`] carries exact rationals and backs
//! every root-counting decision.

mod cubic;
mod exact;
mod sturm;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed};

use crate::error::{Error, Result};

pub use cubic::{cubic_nonneg_certified, cubic_nonneg_closed_form, CubicBranch};
pub use exact::{to_exact, to_f64};
pub(crate) use sturm::nonneg_exact;
pub use sturm::{
    count_real_roots, is_nonnegative_on, nonnegative_on, normalized_minimum, ratio_minimum, real_roots,
    sign_variations, sturm_sequence, sturm_sequence_exact, NonNegVerdict, SturmChain,
};

/// Scalar field usable as a polynomial coefficient.
pub trait Coeff: Clone + PartialOrd + Signed + FromPrimitive + fmt::Debug {}
impl<T: Clone + PartialOrd + Signed + FromPrimitive + fmt::Debug> Coeff for T {}

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    c: Vec<T>,
}

pub type Polynomial = Poly<f64>;
pub type QPoly = Poly<BigRational>;

impl<T: Coeff> Poly<T> {
    pub fn new(mut c: Vec<T>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(v: T) -> Self {
        Poly::new(vec![v])
    }

    /// `v·x^k`.
    pub fn monomial(v: T, k: usize) -> Self {
        let mut c = vec![T::zero(); k + 1];
        c[k] = v;
        Poly::new(c)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Option<&T> {
        self.c.last()
    }

    pub fn coeff(&self, k: usize) -> T {
        self.c.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for a in self.c.iter().rev() {
            acc = acc * x.clone() + a.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a.clone() * T::from_usize(k).expect("degree fits the field"))
            .collect();
        Poly::new(c)
    }

    pub fn scale(&self, k: &T) -> Self {
        Poly::new(self.c.iter().map(|a| a.clone() * k.clone()).collect())
    }

    /// p(−x).
    pub fn reflect(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(k, a)| if k % 2 == 1 { -a.clone() } else { a.clone() })
            .collect();
        Poly::new(c)
    }

    /// Multiplicity of the root at zero.
    pub fn trailing_zeros(&self) -> usize {
        self.c.iter().take_while(|a| a.is_zero()).count()
    }

    /// Drops the lowest `k` coefficients, i.e. divides by x^k when they vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        Poly::new(self.c.iter().skip(k).cloned().collect())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![T::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly::new(c)
    }

    /// Re p(jω) written as a polynomial in x = ω².
    pub fn even_part_in_square(&self) -> Self {
        let c = self
            .c
            .iter()
            .step_by(2)
            .enumerate()
            .map(|(m, a)| if m % 2 == 1 { -a.clone() } else { a.clone() })
            .collect();
        Poly::new(c)
    }

    /// Im p(jω) / ω written as a polynomial in x = ω².
    pub fn odd_part_in_square(&self) -> Self {
        let c = self
            .c
            .iter()
            .skip(1)
            .step_by(2)
            .enumerate()
            .map(|(m, a)| if m % 2 == 1 { -a.clone() } else { a.clone() })
            .collect();
        Poly::new(c)
    }

    /// Euclidean division, `self = q·d + r` with deg r < deg d.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d.lead().ok_or(Error::ZeroDivisor)?.clone();
        let n = d.c.len();
        if self.c.len() < n {
            return Ok((Self::zero(), self.clone()));
        }
        let mut r = self.c.clone();
        let mut q = vec![T::zero(); self.c.len() - n + 1];
        for i in (0..q.len()).rev() {
            let f = r[i + n - 1].clone() / dl.clone();
            if !f.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[i + j] = r[i + j].clone() - f.clone() * dj.clone();
                }
            }
            // the leading slot is exactly zero in exact arithmetic; force it in floats too
            r[i + n - 1] = T::zero();
            q[i] = f;
        }
        r.truncate(n - 1);
        Ok((Poly::new(q), Poly::new(r)))
    }
}

impl Polynomial {
    pub fn from_roots(roots: &[f64]) -> Self {
        roots.iter().fold(Poly::constant(1.0), |acc, &r| &acc * &Poly::new(vec![-r, 1.0]))
    }

    pub fn eval_complex(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &a in self.c.iter().rev() {
            acc = acc * s + a;
        }
        acc
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.c.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    /// Σ|cᵢ|·|x|ⁱ, the natural magnitude scale of p(x).
    pub fn abs_eval(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.c.iter().rev().fold(0.0, |acc, a| acc * ax + a.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|a| a.is_finite())
    }
}

impl<T: Coeff> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, o: &Poly<T>) -> Poly<T> {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<T: Coeff> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, o: &Poly<T>) -> Poly<T> {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<T: Coeff> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, o: &Poly<T>) -> Poly<T> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![T::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(c)
    }
}

impl<T: Coeff> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly { c: self.c.into_iter().map(|a| -a).collect() }
    }
}

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -self.clone()
    }
}

impl<T: Coeff + One> Poly<T> {
    pub fn one() -> Self {
        Poly::constant(T::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate().rev() {
            if *a == 0.0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if *a < 0.0 { '-' } else { '+' })?;
            } else if *a < 0.0 {
                write!(f, "-")?;
            }
            let m = a.abs();
            match k {
                0 => write!(f, "{m}")?,
                1 => write!(f, "{m}x")?,
                _ => write!(f, "{m}x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Horner evaluation of a double-precision polynomial.
pub fn eval(p: &Polynomial, x: f64) -> f64 {
    p.eval(&x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_matches_hand_arithmetic() {
        assert_eq!(eval(&Poly::constant(1.0), 5.0), 1.0);
        assert_eq!(eval(&Poly::new(vec![-2.0, 0.0, 1.0]), 2.0), 2.0);
        assert_eq!(eval(&Poly::new(vec![-1.0, 1.0, 0.0, 3.0]), 0.5), -0.125);
    }

    #[test]
    fn trimming_is_canonical() {
        let p = Poly::new(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        assert!(Poly::new(vec![0.0, 0.0]).is_zero());
        assert_eq!(Poly::<f64>::zero(), Poly::new(vec![0.0]));
    }

    #[test]
    fn division_round_trips() {
        let a = Poly::new(vec![1.0, -3.0, 0.0, 2.0, 5.0]);
        let d = Poly::new(vec![2.0, 1.0, 1.0]);
        let (q, r) = a.div_rem(&d).unwrap();
        let back = &(&q * &d) + &r;
        for k in 0..5 {
            assert!((back.coeff(k) - a.coeff(k)).abs() < 1e-12);
        }
        assert!(r.degree() < 2);
        assert_eq!(a.div_rem(&Poly::zero()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn real_part_polynomial_of_jw() {
        // p(s) = 1 + 2s + 3s² + 4s³ + 5s⁴ ; p(jω) = (1 − 3x + 5x²) + jω(2 − 4x)
        let p = Poly::new(vec![1.0, 2.0, 3.0, 4.0, 5.0]);
        assert_eq!(p.even_part_in_square().coeffs(), &[1.0, -3.0, 5.0]);
        assert_eq!(p.odd_part_in_square().coeffs(), &[2.0, -4.0]);
        let w: f64 = 0.7;
        let z = p.eval_complex(Complex64::new(0.0, w));
        assert!((z.re - p.even_part_in_square().eval(&(w * w))).abs() < 1e-12);
        assert!((z.im - w * p.odd_part_in_square().eval(&(w * w))).abs() < 1e-12);
    }

    #[test]
    fn derivative_and_reflect() {
        let p = Poly::new(vec![1.0, 1.0, 1.0, 1.0]);
        assert_eq!(p.derivative().coeffs(), &[1.0, 2.0, 3.0]);
        assert_eq!(p.reflect().coeffs(), &[1.0, -1.0, 1.0, -1.0]);
    }
}
