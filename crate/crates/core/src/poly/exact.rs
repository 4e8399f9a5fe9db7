use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Polynomial, QPoly};
use crate::error::{Error, Result};

/// Exact binary expansion of a finite double.
pub fn rational(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or(Error::NonFinite)
}

pub fn to_exact(p: &Polynomial) -> Result<QPoly> {
    p.coeffs()
        .iter()
        .map(|&a| rational(a))
        .collect::<Result<_>>()
        .map(QPoly::new)
}

/// Nearest-double projection of an exact polynomial.
pub fn to_f64(q: &QPoly) -> Polynomial {
    Polynomial::new(q.coeffs().iter().map(ratio_to_f64).collect())
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(if r.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

pub(crate) fn sign(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl QPoly {
    pub fn monic(&self) -> QPoly {
        match self.lead() {
            None => QPoly::zero(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor is nonzero");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, d: &QPoly) -> Result<QPoly> {
        let (q, r) = self.div_rem(d)?;
        debug_assert!(r.is_zero(), "inexact polynomial division");
        Ok(q)
    }

    /// p / gcd(p, p'), keeping p's leading coefficient.
    pub fn squarefree(&self) -> QPoly {
        if self.degree() < 1 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            self.clone()
        } else {
            self.exact_div(&g).expect("gcd is nonzero")
        }
    }

    /// Every real root lies strictly inside (−B, B).
    ///
    /// Fujiwara's bound 2·max |aₙ₋ₖ/aₙ|^(1/k), evaluated in floating point
    /// with a generous round-up and checked exactly; Cauchy's bound otherwise.
    pub fn root_bound(&self) -> BigRational {
        let Some(l) = self.lead() else {
            return BigRational::one();
        };
        let la = l.abs();
        let n = self.degree();
        let mut fujiwara = 0.0f64;
        let mut cauchy = BigRational::zero();
        for (i, a) in self.coeffs()[..n].iter().enumerate() {
            let r = a.abs() / la.clone();
            let k = (n - i) as f64;
            fujiwara = fujiwara.max(libm::pow(ratio_to_f64(&r), 1.0 / k));
            if r > cauchy {
                cauchy = r;
            }
        }
        let cauchy = cauchy.ceil() + BigRational::from_integer(BigInt::from(2));
        let guess = libm::ceil(2.0 * fujiwara * 1.01 + 1.0);
        if let (true, Ok(b)) = (guess.is_finite(), rational(guess)) {
            // confirm |aₙ₋ₖ/aₙ| ≤ (B/2)^k for every k, so rounding cannot shrink the bound
            let half = b.clone() / BigRational::from_integer(BigInt::from(2));
            let ok = self.coeffs()[..n].iter().enumerate().all(|(i, a)| {
                let mut p = BigRational::one();
                for _ in 0..(n - i) {
                    p = p * half.clone();
                }
                a.abs() / la.clone() <= p
            });
            if ok && b < cauchy {
                return b;
            }
        }
        cauchy
    }
}
