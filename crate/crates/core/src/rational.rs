//! Rational functions N(s)/D(s) in the Laplace variable.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::poly::{to_exact, to_f64, Coeff, Poly, Polynomial, QPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct Rational<T> {
    num: Poly<T>,
    den: Poly<T>,
}

pub type RationalFunction = Rational<f64>;
pub type QRational = Rational<BigRational>;

impl<T: Coeff> Rational<T> {
    pub fn new(num: Poly<T>, den: Poly<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Rational { num, den })
    }

    pub fn constant(c: T) -> Self {
        Rational { num: Poly::constant(c), den: Poly::constant(T::one()) }
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        Rational { num: p, den: Poly::constant(T::one()) }
    }

    pub fn num(&self) -> &Poly<T> {
        &self.num
    }

    pub fn den(&self) -> &Poly<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// deg N − deg D; negative for strictly proper functions.
    pub fn relative_degree(&self) -> isize {
        if self.num.is_zero() {
            return isize::MIN;
        }
        self.num.degree() as isize - self.den.degree() as isize
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Rational { num: &self.num + &o.num, den: self.den.clone() };
        }
        Rational {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Rational { num: &self.num * &o.num, den: &self.den * &o.den }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.num.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Rational { num: &self.num * &o.den, den: &self.den * &o.num })
    }

    pub fn neg(&self) -> Self {
        Rational { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Rational { num: self.num.scale(c), den: self.den.clone() }
    }
}

impl RationalFunction {
    /// Z(s); fails when |D(s)| is negligible against its own magnitude scale.
    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        let d = self.den.eval_complex(s);
        if d.norm() <= 1e-14 * self.den.abs_eval(s.norm()) {
            return Err(Error::PoleAtFrequency { omega: s.im });
        }
        Ok(self.num.eval_complex(s) / d)
    }

    pub fn eval_jw(&self, omega: f64) -> Result<Complex64> {
        self.eval(Complex64::new(0.0, omega))
    }

    pub fn to_exact(&self) -> Result<QRational> {
        Ok(Rational { num: to_exact(&self.num)?, den: to_exact(&self.den)? })
    }

    /// Common factors of N and D cancelled in exact arithmetic.
    pub fn reduced(&self) -> Result<RationalFunction> {
        Ok(self.to_exact()?.reduced().to_f64())
    }
}

impl QRational {
    /// Cancels gcd(N, D); the denominator's leading coefficient is made positive.
    pub fn reduced(&self) -> QRational {
        let g = self.num.gcd(&self.den);
        let (mut n, mut d) = if g.degree() > 0 {
            (self.num.exact_div(&g).expect("gcd divides"), self.den.exact_div(&g).expect("gcd divides"))
        } else {
            (self.num.clone(), self.den.clone())
        };
        if d.lead().is_some_and(|l| l.is_negative()) {
            n = -n;
            d = -d;
        }
        Rational { num: n, den: d }
    }

    pub fn to_f64(&self) -> RationalFunction {
        Rational { num: to_f64(&self.num), den: to_f64(&self.den) }
    }

    pub fn exact_num(&self) -> &QPoly {
        &self.num
    }

    pub fn exact_den(&self) -> &QPoly {
        &self.den
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Rational::from_poly(p)
    }
}
