//! Dense univariate polynomials in q over the rationals.
//!
//! Coefficients are exact `Rational`s stored ascending by exponent with no
//! trailing zeros, so structural equality is mathematical equality. Division
//! and gcd run the monic Euclidean algorithm; `integer_primitive` splits a
//! polynomial into a rational scale times a primitive integer polynomial with
//! positive leading coefficient, which is what the canonical rational-function
//! form and the serialization format are built from.

use crate::rational::{int_from_decimal, int_to_decimal, Integer, Rational};
use crate::{Error, Result};
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolynomialQ {
    /// Ascending coefficients; empty means zero; last entry nonzero.
    coeffs: Vec<Rational>,
}

impl PolynomialQ {
    // ---- Constructors ----

    pub fn zero() -> Self {
        PolynomialQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = PolynomialQ { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The variable q itself.
    pub fn q() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// c * q^k.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        PolynomialQ { coeffs }
    }

    /// Build from ascending coefficients; trailing zeros are trimmed.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = PolynomialQ { coeffs };
        p.trim();
        p
    }

    /// 1 - q^m for m >= 0; m = 0 gives the zero polynomial.
    pub fn one_minus_q_pow(m: usize) -> Self {
        if m == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); m + 1];
        coeffs[0] = Rational::one();
        coeffs[m] = -Rational::one();
        PolynomialQ { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    // ---- Inspection ----

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of q^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Ascending coefficient slice (empty for zero).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn has_natural_coeffs(&self) -> bool {
        self.coeffs.iter().all(crate::rational::is_natural)
    }

    // ---- Arithmetic ----

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolynomialQ {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by q^k.
    pub fn mul_q_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PolynomialQ { coeffs }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Quotient and remainder with deg r < deg d. Errors on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.degree().unwrap();
        let lead_inv = d.leading_coeff().recip();
        let mut rem = self.clone();
        let mut quot = vec![
            Rational::zero();
            self.coeffs.len().saturating_sub(dd).max(1)
        ];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading_coeff() * &lead_inv;
            let shift = rd - dd;
            quot[shift] = c.clone();
            // rem -= c * q^shift * d
            for (i, dc) in d.coeffs.iter().enumerate() {
                let t = dc * &c;
                rem.coeffs[shift + i] -= t;
            }
            rem.trim();
        }
        Ok((Self::from_coeffs(quot), rem))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d).expect("division by zero polynomial");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Leading coefficient scaled to 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading_coeff().recip())
    }

    /// Monic gcd; gcd(0, 0) = 0. Runs a primitive PRS over the integers:
    /// plain rational Euclid suffers catastrophic coefficient swell once the
    /// inputs come out of longer pipelines.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.degree() == Some(0) || b.degree() == Some(0) {
            return Self::one();
        }
        let (_, mut x) = a.integer_primitive();
        let (_, mut y) = b.integer_primitive();
        if x.degree() < y.degree() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            let r = Self::pseudo_rem(&x, &y);
            x = y;
            y = if r.is_zero() { r } else { r.integer_primitive().1 };
        }
        x.monic()
    }

    /// Fraction-free remainder up to content: self is scaled by the divisor's
    /// leading coefficient instead of dividing, and the integer content is
    /// stripped after every elimination step so coefficients cannot swell.
    /// Only the associate class survives, which is all a gcd needs.
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("nonzero divisor");
        let lc = d.leading_coeff();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let c = r.leading_coeff();
            r = &r.scale(&lc) - &d.mul_q_pow(dr - dd).scale(&c);
            if !r.is_zero() {
                r = r.integer_primitive().1;
            }
        }
        r
    }

    /// Write self = scale * prim with prim a primitive integer polynomial whose
    /// leading coefficient is positive; zero returns (1, 0).
    pub fn integer_primitive(&self) -> (Rational, PolynomialQ) {
        if self.is_zero() {
            return (Rational::one(), Self::zero());
        }
        let mut denom_lcm = Integer::one();
        for c in &self.coeffs {
            denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
        }
        let ints: Vec<Integer> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let mut content = Integer::zero();
        for n in &ints {
            content = num::integer::gcd(content, n.clone());
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        let prim = PolynomialQ {
            coeffs: ints
                .iter()
                .map(|n| Rational::from_integer(n / &content))
                .collect(),
        };
        let scale = Rational::new(content, denom_lcm);
        (scale, prim)
    }

    // ---- Text form ----

    /// Ascending text form, e.g. `1 - q + 2*q^3`. Rational coefficients are
    /// written `a/b`.
    pub fn to_q_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let coeff_part = if a.is_one() && k > 0 {
                String::new()
            } else if a.denom().is_one() {
                int_to_decimal(a.numer())
            } else {
                format!("{}/{}", int_to_decimal(a.numer()), int_to_decimal(a.denom()))
            };
            let q_part = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            match (coeff_part.is_empty(), q_part.is_empty()) {
                (false, false) => {
                    out.push_str(&coeff_part);
                    out.push('*');
                    out.push_str(&q_part);
                }
                (true, false) => out.push_str(&q_part),
                (false, true) => out.push_str(&coeff_part),
                (true, true) => unreachable!(),
            }
        }
        out
    }

    /// Parse the `to_q_string` format.
    pub fn from_q_string(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial string".into()));
        }
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut acc = Self::zero();
        // Split into signed terms at top level; the only separators are " + "
        // and " - ", with an optional leading sign.
        let mut rest = s;
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        }
        loop {
            let (term, next) = match (rest.find(" + "), rest.find(" - ")) {
                (Some(p), Some(m)) if p < m => (&rest[..p], Some((1, &rest[p + 3..]))),
                (Some(_), Some(m)) => (&rest[..m], Some((-1, &rest[m + 3..]))),
                (Some(p), None) => (&rest[..p], Some((1, &rest[p + 3..]))),
                (None, Some(m)) => (&rest[..m], Some((-1, &rest[m + 3..]))),
                (None, None) => (rest, None),
            };
            acc = &acc + &Self::parse_term(term.trim(), sign)?;
            match next {
                Some((s2, r)) => {
                    sign = s2;
                    rest = r;
                }
                None => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(t: &str, sign: i64) -> Result<Self> {
        let bad = || Error::Parse(format!("bad polynomial term: {t:?}"));
        if t.is_empty() {
            return Err(bad());
        }
        let (coeff_str, q_str) = match t.find('*') {
            Some(i) => (&t[..i], Some(&t[i + 1..])),
            None if t.starts_with('q') => ("", Some(t)),
            None => (t, None),
        };
        let coeff = if coeff_str.is_empty() {
            Rational::one()
        } else {
            match coeff_str.split_once('/') {
                Some((n, d)) => {
                    let n = int_from_decimal(n).ok_or_else(bad)?;
                    let d = int_from_decimal(d).ok_or_else(bad)?;
                    Rational::new(n, d)
                }
                None => Rational::from_integer(int_from_decimal(coeff_str).ok_or_else(bad)?),
            }
        };
        let exp: usize = match q_str {
            None => 0,
            Some("q") => 1,
            Some(p) => p
                .strip_prefix("q^")
                .and_then(|e| e.parse().ok())
                .ok_or_else(bad)?,
        };
        let signed = if sign < 0 { -coeff } else { coeff };
        Ok(Self::monomial(signed, exp))
    }

    // ---- JSON ----

    /// `[[exponent, numerator, denominator], ...]` ascending, integers as
    /// decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                serde_json::json!([k, int_to_decimal(c.numer()), int_to_decimal(c.denom())])
            })
            .collect();
        serde_json::Value::Array(terms)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Parse("bad polynomial JSON".into());
        let arr = v.as_array().ok_or_else(bad)?;
        let mut acc = Self::zero();
        for t in arr {
            let triple = t.as_array().ok_or_else(bad)?;
            if triple.len() != 3 {
                return Err(bad());
            }
            let k = triple[0].as_u64().ok_or_else(bad)? as usize;
            let n = int_from_decimal(triple[1].as_str().ok_or_else(bad)?).ok_or_else(bad)?;
            let d = int_from_decimal(triple[2].as_str().ok_or_else(bad)?).ok_or_else(bad)?;
            if d.is_zero() {
                return Err(bad());
            }
            acc = &acc + &Self::monomial(Rational::new(n, d), k);
        }
        Ok(acc)
    }
}

impl fmt::Display for PolynomialQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_q_string())
    }
}

impl fmt::Debug for PolynomialQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolynomialQ({})", self.to_q_string())
    }
}

impl Add for &PolynomialQ {
    type Output = PolynomialQ;
    fn add(self, rhs: &PolynomialQ) -> PolynomialQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        PolynomialQ::from_coeffs(coeffs)
    }
}

impl Sub for &PolynomialQ {
    type Output = PolynomialQ;
    fn sub(self, rhs: &PolynomialQ) -> PolynomialQ {
        self + &(-rhs)
    }
}

impl Neg for &PolynomialQ {
    type Output = PolynomialQ;
    fn neg(self) -> PolynomialQ {
        PolynomialQ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &PolynomialQ {
    type Output = PolynomialQ;
    fn mul(self, rhs: &PolynomialQ) -> PolynomialQ {
        if self.is_zero() || rhs.is_zero() {
            return PolynomialQ::zero();
        }
        let mut coeffs =
            vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        PolynomialQ::from_coeffs(coeffs)
    }
}
