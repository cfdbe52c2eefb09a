//! Rational functions in q, kept in canonical form at all times.
//!
//! Canonical form: numerator and denominator are coprime integer polynomials,
//! the pair carries no common integer content, and the denominator's leading
//! coefficient is positive. Every constructor and arithmetic operation
//! re-canonicalizes, so equality is structural and evaluation never meets a
//! removable singularity: a vanishing denominator at a point is a genuine pole.

use crate::polyq::PolynomialQ;
use crate::rational::Rational;
use crate::{Error, Result};
use num::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionQ {
    num: PolynomialQ,
    den: PolynomialQ,
}

impl RationalFunctionQ {
    // ---- Constructors ----

    /// num/den in canonical form. Errors when den is the zero polynomial.
    pub fn new(num: PolynomialQ, den: PolynomialQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut f = RationalFunctionQ { num, den };
        f.canonicalize();
        Ok(f)
    }

    pub fn from_poly(p: PolynomialQ) -> Self {
        let mut f = RationalFunctionQ {
            num: p,
            den: PolynomialQ::one(),
        };
        f.canonicalize();
        f
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_poly(PolynomialQ::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rational(crate::rational::rat(c))
    }

    /// q^e for a signed exponent.
    pub fn q_pow(e: i64) -> Self {
        if e >= 0 {
            Self::from_poly(PolynomialQ::monomial(Rational::one(), e as usize))
        } else {
            RationalFunctionQ {
                num: PolynomialQ::one(),
                den: PolynomialQ::monomial(Rational::one(), (-e) as usize),
            }
        }
    }

    /// 1 - q^e for a signed exponent; e = 0 gives zero.
    pub fn one_minus_q_pow(e: i64) -> Self {
        if e >= 0 {
            Self::from_poly(PolynomialQ::one_minus_q_pow(e as usize))
        } else {
            // 1 - q^e = -(1 - q^{-e}) / q^{-e}
            let m = (-e) as usize;
            let mut f = RationalFunctionQ {
                num: -&PolynomialQ::one_minus_q_pow(m),
                den: PolynomialQ::monomial(Rational::one(), m),
            };
            f.canonicalize();
            f
        }
    }

    fn canonicalize(&mut self) {
        debug_assert!(!self.den.is_zero());
        if self.num.is_zero() {
            self.den = PolynomialQ::one();
            return;
        }
        let g = PolynomialQ::gcd(&self.num, &self.den);
        if g.degree() != Some(0) {
            self.num = self.num.div_exact(&g);
            self.den = self.den.div_exact(&g);
        }
        let (sn, pn) = self.num.integer_primitive();
        let (sd, pd) = self.den.integer_primitive();
        let s = sn / sd;
        self.num = pn.scale(&Rational::from_integer(s.numer().clone()));
        self.den = pd.scale(&Rational::from_integer(s.denom().clone()));
    }

    // ---- Inspection ----

    pub fn numerator(&self) -> &PolynomialQ {
        &self.num
    }

    pub fn denominator(&self) -> &PolynomialQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Some(p) when the value is a polynomial (constant denominator).
    pub fn as_polynomial(&self) -> Option<PolynomialQ> {
        if self.den.degree() == Some(0) {
            Some(self.num.scale(&self.den.coeff(0).recip()))
        } else {
            None
        }
    }

    /// Some(c) when the value is a constant.
    pub fn as_rational(&self) -> Option<Rational> {
        self.as_polynomial().and_then(|p| {
            if p.degree().is_none_or(|d| d == 0) {
                Some(p.coeff(0))
            } else {
                None
            }
        })
    }

    // ---- Evaluation ----

    /// Evaluate at q = q0. A vanishing denominator is a true pole because the
    /// fraction is stored fully reduced.
    pub fn eval_at_q(&self, q0: &Rational) -> Result<Rational> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::PoleAt(q0.to_string()));
        }
        Ok(self.num.eval(q0) / d)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut f = RationalFunctionQ {
            num: self.den.clone(),
            den: self.num.clone(),
        };
        f.canonicalize();
        Ok(f)
    }
}

impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunctionQ({self})")
    }
}

impl Add for RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn add(self, rhs: Self) -> Self {
        let g = PolynomialQ::gcd(&self.den, &rhs.den);
        let (bq, dq) = if g.degree() == Some(0) {
            (self.den.clone(), rhs.den.clone())
        } else {
            (self.den.div_exact(&g), rhs.den.div_exact(&g))
        };
        let num = &(&self.num * &dq) + &(&rhs.num * &bq);
        let den = &self.den * &dq;
        RationalFunctionQ::new(num, den).expect("nonzero denominator")
    }
}

impl Sub for RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn neg(self) -> Self {
        RationalFunctionQ {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl Mul for RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // Cross-reduce before multiplying to keep degrees down.
        let g1 = PolynomialQ::gcd(&self.num, &rhs.den);
        let g2 = PolynomialQ::gcd(&rhs.num, &self.den);
        let a = if g1.degree() == Some(0) { self.num.clone() } else { self.num.div_exact(&g1) };
        let d = if g1.degree() == Some(0) { rhs.den.clone() } else { rhs.den.div_exact(&g1) };
        let c = if g2.degree() == Some(0) { rhs.num.clone() } else { rhs.num.div_exact(&g2) };
        let b = if g2.degree() == Some(0) { self.den.clone() } else { self.den.div_exact(&g2) };
        RationalFunctionQ::new(&a * &c, &b * &d).expect("nonzero denominator")
    }
}

impl Div for RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip().expect("division by zero rational function")
    }
}

impl Zero for RationalFunctionQ {
    fn zero() -> Self {
        RationalFunctionQ {
            num: PolynomialQ::zero(),
            den: PolynomialQ::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunctionQ {
    fn one() -> Self {
        RationalFunctionQ {
            num: PolynomialQ::one(),
            den: PolynomialQ::one(),
        }
    }
    fn is_one(&self) -> bool {
        RationalFunctionQ::is_one(self)
    }
}
